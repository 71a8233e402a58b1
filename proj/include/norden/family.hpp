#pragma once

// The bundled four-parameter family of models.
//
// On a 4-dimensional real Lie algebra with basis X1..X4 the bracket depends
// on parameters l1..l4:
//   [X1,X2] =  l2 X3 - l1 X4      [X2,X3] = -l2 X1 - l3 X4
//   [X1,X3] =  l2 X2 + l4 X4      [X2,X4] =  l1 X1 + l3 X3
//   [X1,X4] = -l1 X2 - l4 X3      [X3,X4] = -l4 X1 + l3 X2
// together with the almost complex structure
//   J X1 = X3,  J X2 = X4,  J X3 = -X1,  J X4 = -X2
// and the metric g = diag(1, 1, -1, -1), which makes (g, J) a Norden pair.
// The metric is ad-invariant for every parameter value, so the Levi-Civita
// connection is half the bracket.
//
// The family can be built symbolically (entries are polynomials in l1..l4)
// or numerically at a rational parameter point (empty parameter space).

#include "norden/lie_algebra.hpp"
#include "norden/metric.hpp"
#include "norden/poly.hpp"
#include "norden/tensor.hpp"

#include <array>

namespace norden {

struct FamilyModel {
    SpacePtr space;
    std::array<Poly, 4> lambda;
    LieAlgebra algebra;
    Metric metric;
    Tensor j;
};

/// Build the family over an arbitrary space with arbitrary polynomial
/// parameter values (used for both the symbolic and the numeric variant).
inline FamilyModel make_family(const SpacePtr& space,
                               std::array<Poly, 4> lambda) {
    const Poly& l1 = lambda[0];
    const Poly& l2 = lambda[1];
    const Poly& l3 = lambda[2];
    const Poly& l4 = lambda[3];

    Tensor c(space, 4, {Variance::Up, Variance::Down, Variance::Down});
    auto set = [&c](std::size_t k, std::size_t i, std::size_t j, const Poly& v) {
        c(k - 1, i - 1, j - 1) = v;
        c(k - 1, j - 1, i - 1) = -v;
    };
    set(3, 1, 2, l2);
    set(4, 1, 2, -l1);
    set(2, 1, 3, l2);
    set(4, 1, 3, l4);
    set(2, 1, 4, -l1);
    set(3, 1, 4, -l4);
    set(1, 2, 3, -l2);
    set(4, 2, 3, -l3);
    set(1, 2, 4, l1);
    set(3, 2, 4, l3);
    set(1, 3, 4, -l4);
    set(2, 3, 4, l3);

    Tensor g(space, 4, {Variance::Down, Variance::Down});
    g(0, 0) = Rational(1);
    g(1, 1) = Rational(1);
    g(2, 2) = Rational(-1);
    g(3, 3) = Rational(-1);

    Tensor j(space, 4, {Variance::Up, Variance::Down});
    j(2, 0) = Rational(1);
    j(3, 1) = Rational(1);
    j(0, 2) = Rational(-1);
    j(1, 3) = Rational(-1);

    return FamilyModel{space, std::move(lambda), LieAlgebra(std::move(c)),
                       Metric(std::move(g)), std::move(j)};
}

/// Fully symbolic family over the space {l1, l2, l3, l4}.
inline FamilyModel make_symbolic_family() {
    SpacePtr space = make_space({"l1", "l2", "l3", "l4"});
    std::array<Poly, 4> lambda{
        Poly::variable(space, 0), Poly::variable(space, 1),
        Poly::variable(space, 2), Poly::variable(space, 3)};
    return make_family(space, std::move(lambda));
}

/// Numeric family at a rational parameter point; all entries are constants
/// over the empty parameter space.
inline FamilyModel make_numeric_family(const std::array<Rational, 4>& values) {
    SpacePtr space = empty_space();
    std::array<Poly, 4> lambda{
        Poly::constant(space, values[0]), Poly::constant(space, values[1]),
        Poly::constant(space, values[2]), Poly::constant(space, values[3])};
    return make_family(space, std::move(lambda));
}

}  // namespace norden
