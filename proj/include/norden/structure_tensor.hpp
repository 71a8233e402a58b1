#pragma once

// The fundamental (0,3) tensor F(x,y,z) = g((nabla_x J) y, z) of an almost
// complex manifold with Norden metric, its trace one-form, and the exact
// classification of the pair (J, g) by the vanishing conditions of F.
//
// Classes checked (all conditions exact, over the polynomial ring):
//   w0: F = 0 (the integrable-parallel case; every other class contains it);
//   w1: F is the canonical trace form built from theta
//         F(x,y,z) = k * { g(x,y) theta(z) + g(x,z) theta(y)
//                        + g(x,Jy) theta(Jz) + g(x,Jz) theta(Jy) },
//       with k = 1/dim by default (dim = 2n), overridable;
//   w2: the cyclic sum of F(x,y,Jz) vanishes and theta = 0;
//   w3: the cyclic sum of F(x,y,z) vanishes.

#include "norden/connection.hpp"
#include "norden/metric.hpp"
#include "norden/tensor.hpp"

#include <optional>

namespace norden {

/// F(x,y,z) = g((nabla_x J) y, z), slots [x][y][z].
inline Tensor f_tensor(const Connection& nabla, const Tensor& J,
                       const Metric& g) {
    const Tensor nj = nabla.covariant_derivative(J);  // (x, a, y)
    const Tensor lowered = apply_metric(nj, 1, g.tensor());  // (x, z, y)
    return permute(lowered, {0, 2, 1});
}

/// theta(z) = g^{ij} F(e_i, e_j, z).
inline Tensor lie_form(const Tensor& F, const Metric& g) {
    return contract(apply_metric(F, 0, g.inverse()), 0, 1);
}

/// S(x,y,z) = T(x,y,z) + T(y,z,x) + T(z,x,y) for a (0,3) tensor.
inline Tensor cyclic_sum(const Tensor& T) {
    if (T.rank() != 3) throw error("cyclic_sum expects a rank-3 tensor");
    return T + permute(T, {1, 2, 0}) + permute(T, {2, 0, 1});
}

/// The two identities every fundamental tensor satisfies:
/// F(x,y,z) = F(x,z,y) and F(x,Jy,Jz) = F(x,y,z).  Throws with a witness
/// index when violated (which signals inconsistent inputs, e.g. a
/// connection that does not preserve g).
inline void validate_f_properties(const Tensor& F, const Tensor& J) {
    const std::size_t n = F.dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = y; z < n; ++z)
                if (F(x, y, z) != F(x, z, y))
                    throw error("fundamental tensor not symmetric in last two "
                                "slots at (" +
                                std::to_string(x + 1) + "," +
                                std::to_string(y + 1) + "," +
                                std::to_string(z + 1) + ")");
    const Tensor fjj = compose(compose(F, 1, J), 2, J);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (fjj(x, y, z) != F(x, y, z))
                    throw error("fundamental tensor violates F(x,Jy,Jz) = "
                                "F(x,y,z) at (" +
                                std::to_string(x + 1) + "," +
                                std::to_string(y + 1) + "," +
                                std::to_string(z + 1) + ")");
}

/// The canonical trace-form tensor of class w1 for a given one-form theta.
inline Tensor w1_trace_form(const Tensor& theta, const Metric& g,
                            const Tensor& J, const Rational& coefficient) {
    const std::size_t n = g.dim();
    const Tensor gj = compose(g.tensor(), 1, J);  // g(x, Jy)
    const Tensor thetaj = compose(theta, 0, J);   // theta(Jz)
    Tensor out(g.space(), n,
               {Variance::Down, Variance::Down, Variance::Down});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                out(x, y, z) =
                    Poly(coefficient) *
                    (g.tensor()(x, y) * theta(z) + g.tensor()(x, z) * theta(y) +
                     gj(x, y) * thetaj(z) + gj(x, z) * thetaj(y));
    return out;
}

struct ClassificationResult {
    bool w0 = false;
    bool w1 = false;
    bool w2 = false;
    bool w3 = false;
    Tensor theta;        // the trace one-form
    Tensor w1_residual;  // F minus its w1 trace form
    Tensor w2_residual;  // cyclic sum of F(x,y,Jz) (w2 also needs theta = 0)
    Tensor w3_residual;  // cyclic sum of F(x,y,z)
};

/// Decide every class membership exactly.  `w1_coefficient` overrides the
/// canonical 1/dim factor of the w1 trace form.
inline ClassificationResult classify(
    const Tensor& F, const Tensor& J, const Metric& g,
    std::optional<Rational> w1_coefficient = std::nullopt) {
    validate_f_properties(F, J);
    const Rational k = w1_coefficient.value_or(
        Rational(1, static_cast<long>(F.dim())));
    ClassificationResult r{false,
                           false,
                           false,
                           false,
                           lie_form(F, g),
                           Tensor(F.space(), F.dim(), F.slots()),
                           Tensor(F.space(), F.dim(), F.slots()),
                           Tensor(F.space(), F.dim(), F.slots())};
    r.w0 = F.is_zero();
    r.w1_residual = F - w1_trace_form(r.theta, g, J, k);
    r.w1 = r.w1_residual.is_zero();
    r.w2_residual = cyclic_sum(compose(F, 2, J));
    r.w2 = r.w2_residual.is_zero() && r.theta.is_zero();
    r.w3_residual = cyclic_sum(F);
    r.w3 = r.w3_residual.is_zero();
    return r;
}

}  // namespace norden
