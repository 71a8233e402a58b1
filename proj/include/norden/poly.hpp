#pragma once

// Multivariate polynomials over Q with exact coefficients.
//
// A Poly lives in a ParameterSpace, which fixes the ordered list of
// parameter names (for the bundled four-parameter family these are
// l1,l2,l3,l4; a purely numeric computation uses the empty space, in
// which every Poly is a rational constant).
//
// Terms are kept in a std::map ordered by graded lexicographic order,
// descending: higher total degree first, ties broken by the
// lexicographically greater exponent vector.  Iterating the map therefore
// yields the canonical serialization order directly, which keeps every
// textual and JSON rendering byte-stable.

#include "norden/rational.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace norden {

/// Ordered list of parameter names shared by all polynomials of a model.
struct ParameterSpace {
    std::vector<std::string> names;

    explicit ParameterSpace(std::vector<std::string> parameter_names)
        : names(std::move(parameter_names)) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!valid_name(names[i]))
                throw error("invalid parameter name \"" + names[i] + "\"");
            for (std::size_t j = 0; j < i; ++j)
                if (names[i] == names[j])
                    throw error("duplicate parameter name \"" + names[i] + "\"");
        }
    }

    std::size_t size() const { return names.size(); }

    /// Index of a name, or std::nullopt when the space does not contain it.
    std::optional<std::size_t> find(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }

    static bool valid_name(const std::string& name) {
        if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
            return false;
        for (char c : name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                return false;
        return true;
    }

    friend bool operator==(const ParameterSpace& a, const ParameterSpace& b) {
        return a.names == b.names;
    }
};

using SpacePtr = std::shared_ptr<const ParameterSpace>;

inline SpacePtr make_space(std::vector<std::string> names) {
    return std::make_shared<const ParameterSpace>(std::move(names));
}

/// The space with no parameters; its polynomials are rational constants.
inline const SpacePtr& empty_space() {
    static const SpacePtr space = make_space({});
    return space;
}

/// Exponent vector of one monomial; entry i is the power of parameter i.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Canonical term order: higher total degree first, then lexicographically
/// greater exponent vector first.
struct GrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const std::uint64_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, GrlexDesc>;

    /// The zero polynomial of the empty parameter space.
    Poly() : space_(empty_space()) {}

    /// Implicit lift of a rational constant (empty parameter space; binary
    /// operations lift constants into the other operand's space).
    Poly(const Rational& value) : space_(empty_space()) {  // NOLINT(google-explicit-constructor)
        if (value != 0) terms_.emplace(Monomial{}, value);
    }
    Poly(long long value) : Poly(Rational(value)) {}  // NOLINT(google-explicit-constructor)

    static Poly zero(SpacePtr space) { return Poly(std::move(space)); }

    static Poly constant(SpacePtr space, const Rational& value) {
        Poly p(std::move(space));
        if (value != 0) p.terms_.emplace(Monomial(p.space_->size(), 0), value);
        return p;
    }

    static Poly variable(SpacePtr space, std::size_t index) {
        if (index >= space->size())
            throw error("parameter index out of range");
        Poly p(std::move(space));
        Monomial m(p.space_->size(), 0);
        m[index] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static Poly variable(const SpacePtr& space, const std::string& name) {
        auto idx = space->find(name);
        if (!idx) throw error("unknown parameter \"" + name + "\"");
        return variable(space, *idx);
    }

    const SpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    /// True when the polynomial has no term of positive degree.
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    /// Value of a constant polynomial (throws otherwise).
    Rational constant_value() const {
        if (!is_constant()) throw error("polynomial is not constant");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    Poly operator-() const {
        Poly out(space_);
        for (const auto& [mon, coeff] : terms_) out.terms_.emplace(mon, -coeff);
        return out;
    }

    Poly& operator+=(const Poly& rhs) {
        if (this == &rhs) return *this = *this * Rational(2);
        if (same_space(rhs)) {
            for (const auto& [mon, coeff] : rhs.terms_) add_term(mon, coeff);
        } else if (rhs.is_constant()) {
            if (!rhs.is_zero())
                add_term(Monomial(space_->size(), 0), rhs.constant_value());
        } else if (is_constant()) {
            Poly lifted = constant(rhs.space_, constant_value());
            lifted += rhs;
            *this = std::move(lifted);
        } else {
            throw error("polynomial parameter spaces differ");
        }
        return *this;
    }
    Poly& operator-=(const Poly& rhs) {
        if (this == &rhs) return *this = zero(space_);
        return *this += -rhs;
    }
    Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (!a.same_space(b)) {
            if (a.is_constant()) return scaled(b, a.constant_value());
            if (b.is_constant()) return scaled(a, b.constant_value());
            throw error("polynomial parameter spaces differ");
        }
        Poly out(a.space_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }

    friend Poly operator/(Poly p, const Rational& c) {
        if (c == 0) throw error("division of polynomial by zero");
        for (auto& [mon, coeff] : p.terms_) coeff /= c;
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (!a.same_space(b)) {
            if (a.is_constant() && b.is_constant())
                return a.constant_value() == b.constant_value();
            throw error("polynomial parameter spaces differ");
        }
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Evaluate at one rational per parameter, in parameter order.
    Rational eval(const std::vector<Rational>& values) const {
        if (values.size() != space_->size())
            throw error("eval expects " + std::to_string(space_->size()) +
                        " values, got " + std::to_string(values.size()));
        Rational sum = 0;
        for (const auto& [mon, coeff] : terms_) {
            Rational term = coeff;
            for (std::size_t i = 0; i < mon.size(); ++i)
                for (std::uint32_t e = 0; e < mon[i]; ++e) term *= values[i];
            sum += term;
        }
        return sum;
    }

  private:
    explicit Poly(SpacePtr space) : space_(std::move(space)) {}

    bool same_space(const Poly& other) const {
        return space_ == other.space_ || *space_ == *other.space_;
    }

    static Poly scaled(Poly p, const Rational& c) {
        if (c == 0) return zero(p.space_);
        for (auto& [mon, coeff] : p.terms_) coeff *= c;
        return p;
    }

    void add_term(const Monomial& mon, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(mon, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SpacePtr space_;
    TermMap terms_;
};

/// Canonical rendering.  Every term prints its coefficient explicitly
/// ("-1*l1", "3/2*l3^2"); terms appear in graded-descending order; the first
/// term carries its sign inside the coefficient and later terms are joined
/// with " + " or " - ".  The zero polynomial prints as "0".
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    const auto& names = p.space()->names;
    std::string out;
    bool first = true;
    for (const auto& [mon, coeff] : p.terms()) {
        std::string factors;
        for (std::size_t i = 0; i < mon.size(); ++i) {
            if (mon[i] == 0) continue;
            if (!factors.empty()) factors += '*';
            factors += names[i];
            if (mon[i] >= 2) factors += '^' + std::to_string(mon[i]);
        }
        if (first) {
            out += to_string(coeff);
            first = false;
        } else if (coeff > 0) {
            out += " + " + to_string(coeff);
        } else {
            out += " - " + to_string(Rational(-coeff));
        }
        if (!factors.empty()) out += '*' + factors;
    }
    return out;
}

/// Parse a polynomial over the given space.
///
/// Grammar (whitespace allowed between tokens):
///   poly   := ['+'|'-'] term { ('+'|'-') term }
///   term   := coefficient { '*' factor } | factor { '*' factor }
///   coefficient := digits [ '/' digits ]
///   factor := name [ '^' digits ]      (exponent >= 1)
///
/// Names must belong to the space; repeated factors multiply
/// ("l1*l1" == "l1^2").  Errors carry the offending position.
inline Poly parse_poly(const std::string& text, const SpacePtr& space) {
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto fail = [&text](const std::string& what, std::size_t pos) {
        throw parse_error("invalid polynomial \"" + text + "\": " + what +
                          " at position " + std::to_string(pos));
    };
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto parse_digits = [&](const char* what) -> BigInt {
        const std::size_t begin = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == begin) fail(std::string("expected ") + what, i);
        return BigInt(text.substr(begin, i - begin));
    };
    auto parse_coefficient = [&]() -> Rational {
        BigInt num = parse_digits("digit");
        BigInt den = 1;
        if (i < n && text[i] == '/') {
            ++i;
            const std::size_t den_pos = i;
            den = parse_digits("digit after '/'");
            if (den == 0) fail("denominator is zero", den_pos);
        }
        return Rational(num, den);
    };
    // Parses one "name[^k]" factor into the exponent vector.
    auto parse_factor = [&](Monomial& exps) {
        const std::size_t begin = i;
        if (i >= n || !std::isalpha(static_cast<unsigned char>(text[i])))
            fail("expected parameter name", i);
        ++i;
        while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                         text[i] == '_'))
            ++i;
        const std::string name = text.substr(begin, i - begin);
        const auto idx = space->find(name);
        if (!idx) fail("unknown parameter \"" + name + "\"", begin);
        std::uint32_t power = 1;
        if (i < n && text[i] == '^') {
            ++i;
            const std::size_t exp_pos = i;
            BigInt e = parse_digits("digit after '^'");
            if (e == 0) fail("exponent must be >= 1", exp_pos);
            if (e > 1000000) fail("exponent too large", exp_pos);
            power = static_cast<std::uint32_t>(e);
        }
        exps[*idx] += power;
    };

    Poly result = Poly::zero(space);
    skip_ws();
    if (i == n) fail("empty polynomial", i);
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip_ws();
    }
    while (true) {
        // One term: optional coefficient followed by '*'-joined factors.
        Rational coeff = 1;
        Monomial exps(space->size(), 0);
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = parse_coefficient();
            while (true) {
                const std::size_t save = i;
                skip_ws();
                if (i < n && text[i] == '*') {
                    ++i;
                    skip_ws();
                    parse_factor(exps);
                } else {
                    i = save;
                    break;
                }
            }
        } else {
            parse_factor(exps);
            while (true) {
                const std::size_t save = i;
                skip_ws();
                if (i < n && text[i] == '*') {
                    ++i;
                    skip_ws();
                    parse_factor(exps);
                } else {
                    i = save;
                    break;
                }
            }
        }
        Poly term = Poly::constant(space, sign > 0 ? coeff : Rational(-coeff));
        for (std::size_t v = 0; v < exps.size(); ++v)
            for (std::uint32_t e = 0; e < exps[v]; ++e)
                term *= Poly::variable(space, v);
        result += term;

        skip_ws();
        if (i == n) break;
        if (text[i] == '+') sign = 1;
        else if (text[i] == '-') sign = -1;
        else fail("expected '+' or '-'", i);
        ++i;
        skip_ws();
        if (i == n) fail("dangling operator", i);
    }
    return result;
}

/// If a == c*b for some rational c, return c; otherwise std::nullopt.
/// (When b == 0 this exists only for a == 0, reported as c = 0.)
inline std::optional<Rational> rational_multiple_of(const Poly& a, const Poly& b) {
    if (b.is_zero()) {
        if (a.is_zero()) return Rational(0);
        return std::nullopt;
    }
    const auto& lead = *b.terms().begin();
    Rational candidate = 0;
    auto it = a.terms().find(lead.first);
    if (it != a.terms().end()) candidate = it->second / lead.second;
    if (a == candidate * b) return candidate;
    return std::nullopt;
}

/// True when one of the two polynomials is a rational multiple of the other.
inline bool proportional(const Poly& a, const Poly& b) {
    return rational_multiple_of(a, b).has_value() ||
           rational_multiple_of(b, a).has_value();
}

}  // namespace norden
