#pragma once

// JSON model documents.  A document carries the dimension, the parameter
// names, the bracket relations for i<j (antisymmetric completion is
// applied), a symmetric rational metric matrix, and the matrix of the
// almost complex structure:
//
//   {
//     "dim": 4,
//     "params": ["l1", "l2", "l3", "l4"],
//     "brackets": [
//       {"i": 1, "j": 2, "coefficients": {"3": "1*l2", "4": "-1*l1"}},
//       ...
//     ],
//     "metric": [["1","0","0","0"], ...],
//     "j": [["0","0","-1","0"], ...]
//   }
//
// `j[a][b]` is the component of J(X_b) along X_a.  Polynomials use the
// canonical grammar; metric and j entries are rational constants.  Parsing
// validates every structural invariant and names the failing identity.

#include "norden/lie_algebra.hpp"
#include "norden/metric.hpp"
#include "norden/poly.hpp"
#include "norden/tensor.hpp"

#include <json.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace norden {

struct ParsedModel {
    SpacePtr space;
    LieAlgebra algebra;
    Metric metric;
    Tensor j;
};

namespace detail {

inline const nlohmann::json& model_field(const nlohmann::json& doc,
                                         const char* name,
                                         const char* type_name) {
    if (!doc.contains(name))
        throw parse_error(std::string("model: missing field \"") + name +
                          "\"");
    const nlohmann::json& field = doc.at(name);
    const bool ok = (std::string(type_name) == "array" && field.is_array()) ||
                    (std::string(type_name) == "object" && field.is_object());
    if (!ok)
        throw parse_error(std::string("model: field \"") + name +
                          "\" must be a JSON " + type_name);
    return field;
}

inline Tensor parse_model_matrix(const nlohmann::json& rows,
                                 const char* name, const SpacePtr& space,
                                 std::size_t dim, Variance first_slot) {
    Tensor out(space, dim, {first_slot, Variance::Down});
    if (rows.size() != dim)
        throw parse_error(std::string("model: \"") + name + "\" must have " +
                          std::to_string(dim) + " rows");
    for (std::size_t a = 0; a < dim; ++a) {
        const nlohmann::json& row = rows.at(a);
        if (!row.is_array() || row.size() != dim)
            throw parse_error(std::string("model: \"") + name + "\" row " +
                              std::to_string(a + 1) + " must have " +
                              std::to_string(dim) + " entries");
        for (std::size_t b = 0; b < dim; ++b) {
            const nlohmann::json& cell = row.at(b);
            if (!cell.is_string())
                throw parse_error(std::string("model: \"") + name + "\"[" +
                                  std::to_string(a + 1) + "][" +
                                  std::to_string(b + 1) +
                                  "] must be a rational string");
            try {
                out(a, b) = Poly::constant(space,
                                           parse_rational(cell.get<std::string>()));
            } catch (const parse_error& e) {
                throw parse_error(std::string("model: \"") + name + "\"[" +
                                  std::to_string(a + 1) + "][" +
                                  std::to_string(b + 1) + "]: " + e.what());
            }
        }
    }
    return out;
}

}  // namespace detail

/// Parse and validate a model document.  Throws parse_error (with position
/// or field context) for malformed documents and error (naming the failing
/// identity) for structural violations.
inline ParsedModel parse_model(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("model: ") + e.what());
    }
    if (!doc.is_object())
        throw parse_error("model: document must be a JSON object");

    if (!doc.contains("dim") || !doc.at("dim").is_number_integer())
        throw parse_error("model: \"dim\" must be an integer");
    const long long dim_value = doc.at("dim").get<long long>();
    if (dim_value < 2 || dim_value % 2 != 0)
        throw parse_error(
            "model: \"dim\" must be a positive even integer (almost "
            "complex structures need even dimension)");
    const std::size_t dim = static_cast<std::size_t>(dim_value);

    std::vector<std::string> params;
    if (doc.contains("params")) {
        const nlohmann::json& list =
            detail::model_field(doc, "params", "array");
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (!list.at(k).is_string())
                throw parse_error("model: \"params\"[" +
                                  std::to_string(k + 1) +
                                  "] must be a string");
            params.push_back(list.at(k).get<std::string>());
        }
    }
    const SpacePtr space = make_space(params);

    Tensor c(space, dim,
             {Variance::Up, Variance::Down, Variance::Down});
    std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
    const nlohmann::json& brackets =
        detail::model_field(doc, "brackets", "array");
    for (std::size_t entry = 0; entry < brackets.size(); ++entry) {
        const std::string where =
            "model: \"brackets\"[" + std::to_string(entry + 1) + "]";
        const nlohmann::json& rel = brackets.at(entry);
        if (!rel.is_object() || !rel.contains("i") || !rel.contains("j") ||
            !rel.contains("coefficients") ||
            !rel.at("i").is_number_integer() ||
            !rel.at("j").is_number_integer() ||
            !rel.at("coefficients").is_object())
            throw parse_error(
                where +
                " must be {\"i\": int, \"j\": int, \"coefficients\": "
                "{basis index -> polynomial}}");
        const long long i_value = rel.at("i").get<long long>();
        const long long j_value = rel.at("j").get<long long>();
        if (i_value < 1 || j_value < 1 ||
            i_value >= static_cast<long long>(dim) + 1 ||
            j_value >= static_cast<long long>(dim) + 1)
            throw parse_error(where + ": indices must lie in [1," +
                              std::to_string(dim) + "]");
        if (i_value >= j_value)
            throw parse_error(
                where +
                ": brackets are given for i < j only (the i > j half is "
                "filled in by antisymmetry)");
        const std::size_t i = static_cast<std::size_t>(i_value) - 1;
        const std::size_t j = static_cast<std::size_t>(j_value) - 1;
        if (!seen_pairs.insert({i, j}).second)
            throw parse_error(where + ": duplicate bracket for this (i,j)");
        for (const auto& [key, value] : rel.at("coefficients").items()) {
            std::size_t k = 0;
            try {
                std::size_t used = 0;
                const long long parsed = std::stoll(key, &used);
                if (used != key.size() || parsed < 1 ||
                    parsed > static_cast<long long>(dim))
                    throw std::invalid_argument("range");
                k = static_cast<std::size_t>(parsed) - 1;
            } catch (const std::exception&) {
                throw parse_error(where + ": coefficient key \"" + key +
                                  "\" must be a basis index in [1," +
                                  std::to_string(dim) + "]");
            }
            if (!value.is_string())
                throw parse_error(where + ": coefficient \"" + key +
                                  "\" must be a polynomial string");
            try {
                c(k, i, j) = parse_poly(value.get<std::string>(), space);
            } catch (const parse_error& e) {
                throw parse_error(where + ": coefficient \"" + key +
                                  "\": " + e.what());
            }
            c(k, j, i) = -c(k, i, j);
        }
    }

    Tensor g = detail::parse_model_matrix(
        detail::model_field(doc, "metric", "array"), "metric", space, dim,
        Variance::Down);
    Tensor j = detail::parse_model_matrix(
        detail::model_field(doc, "j", "array"), "j", space, dim,
        Variance::Up);

    // Structural invariants, each named.  Metric symmetry and
    // nondegeneracy are validated by the Metric constructor itself.
    Metric metric(std::move(g));
    if (!is_almost_complex(j)) {
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                Poly sum = Poly::zero(space);
                for (std::size_t k = 0; k < dim; ++k)
                    sum += j(a, k) * j(k, b);
                const Rational want = a == b ? Rational(-1) : Rational(0);
                if (sum == Poly::constant(space, want)) continue;
                throw error("model: J^2 = -identity violated at (" +
                            std::to_string(a + 1) + "," +
                            std::to_string(b + 1) + ")");
            }
        throw error("model: J^2 = -identity violated");
    }
    LieAlgebra algebra(std::move(c));
    if (!algebra.satisfies_jacobi()) {
        const Tensor residual = algebra.jacobi_residual();
        for (MultiIndex mi(dim, 4); !mi.done(); mi.next())
            if (!residual.at(*mi).is_zero())
                throw error("model: Jacobi identity violated at (" +
                            std::to_string((*mi)[1] + 1) + "," +
                            std::to_string((*mi)[2] + 1) + "," +
                            std::to_string((*mi)[3] + 1) + ")");
        throw error("model: Jacobi identity violated");
    }
    if (!is_norden_pair(metric, j)) {
        for (std::size_t x = 0; x < dim; ++x)
            for (std::size_t y = 0; y < dim; ++y) {
                Poly sum = Poly::zero(space);
                for (std::size_t a = 0; a < dim; ++a)
                    for (std::size_t b = 0; b < dim; ++b)
                        sum += metric.tensor()(a, b) * j(a, x) * j(b, y);
                if ((sum + metric.tensor()(x, y)).is_zero()) continue;
                throw error(
                    "model: Norden compatibility g(Jx,Jy) = -g(x,y) "
                    "violated at (" +
                    std::to_string(x + 1) + "," + std::to_string(y + 1) +
                    ")");
            }
        throw error("model: Norden compatibility violated");
    }
    return ParsedModel{space, std::move(algebra), std::move(metric),
                       std::move(j)};
}

}  // namespace norden
