#pragma once

// Exact rational arithmetic used throughout the library.
//
// Every quantity the library computes is an element of Q or of a polynomial
// ring over Q; no floating point appears anywhere.  The integer and rational
// types are backed by Boost.Multiprecision, so values never overflow and
// equality is always decidable.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace norden {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for all errors thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Error for malformed textual input (rationals, polynomials, model files).
struct parse_error : error {
    using error::error;
};

/// Render a rational in canonical form: lowest terms, positive denominator,
/// "n" when the denominator is 1 and "n/d" otherwise.
inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    std::string out = num.str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

/// Parse a rational written as "[-]digits" or "[-]digits/digits".
///
/// The denominator carries no sign and must be nonzero.  Any other
/// character, including whitespace, is rejected with a position-annotated
/// parse_error.
inline Rational parse_rational(const std::string& text) {
    auto fail = [&text](const std::string& what, std::size_t pos) {
        throw parse_error("invalid rational \"" + text + "\": " + what +
                          " at position " + std::to_string(pos));
    };
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && text[i] == '-') {
        negative = true;
        ++i;
    }
    const std::size_t num_begin = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) fail("expected digit", i);
    BigInt num(text.substr(num_begin, i - num_begin));
    BigInt den = 1;
    if (i < n && text[i] == '/') {
        ++i;
        const std::size_t den_begin = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin) fail("expected digit after '/'", i);
        den = BigInt(text.substr(den_begin, i - den_begin));
        if (den == 0) fail("denominator is zero", den_begin);
    }
    if (i != n) fail("unexpected character", i);
    if (negative) num = -num;
    return Rational(num, den);
}

}  // namespace norden
