#pragma once

// Curvature-derived quantities: Ricci tensor, scalar curvature, square
// norms, and the Weyl conformal curvature tensor.
//
// Two Weyl normalizations are implemented.  The standard one,
//   W = R - 1/(m-2) psi1(rho) + tau/((m-1)(m-2)) pi1,
// is trace-free and annihilates constant-curvature tensors; it is the
// default everywhere.  The variant called `printed` replaces the last term
// by - tau/(m-1) pi1 (a sign-and-factor variant that circulates in print);
// it differs from the standard one by tau/(m-2) * pi1 and is provided so
// published component lists using either normalization can be reproduced
// and compared exactly.

#include "norden/connection.hpp"
#include "norden/metric.hpp"
#include "norden/tensor.hpp"

#include <utility>

namespace norden {

struct RicciScalar {
    Tensor ricci;  // rho(y,z) = R^i_{iyz}, the metric-free trace
    Poly scalar;   // tau = g^{yz} rho(y,z)
};

/// Ricci and scalar curvature from R^m_{ijk}.
inline RicciScalar ricci_and_scalar(const Tensor& r13, const Metric& g) {
    if (r13.rank() != 4 || r13.slots()[0] != Variance::Up)
        throw error("ricci_and_scalar expects R^m_{ijk}");
    Tensor rho = contract(r13, 0, 1);
    Poly tau = full_contract(g.inverse(), rho);
    return {std::move(rho), std::move(tau)};
}

/// Square norm of an all-covariant tensor: every slot is raised with g^{-1}
/// and paired against the original, e.g. for rank 3
///   ||T||^2 = g^{ij} g^{kl} g^{pq} T_{ikp} T_{jlq}.
inline Poly square_norm(const Tensor& t, const Metric& g) {
    Tensor up = t;
    for (std::size_t s = 0; s < t.rank(); ++s)
        up = apply_metric(up, s, g.inverse());
    return full_contract(up, t);
}

/// psi1(S)(x,y,z,u) = g(y,z)S(x,u) - g(x,z)S(y,u)
///                  + S(y,z)g(x,u) - S(x,z)g(y,u)
/// for a symmetric (0,2) tensor S; a curvature-like (0,4) tensor.
inline Tensor psi1(const Tensor& s, const Metric& g) {
    if (s.rank() != 2) throw error("psi1 expects a (0,2) tensor");
    const std::size_t n = g.dim();
    const Tensor& G = g.tensor();
    Tensor out(s.space(), n,
               {Variance::Down, Variance::Down, Variance::Down, Variance::Down});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t u = 0; u < n; ++u)
                    out(x, y, z, u) = G(y, z) * s(x, u) - G(x, z) * s(y, u) +
                                      s(y, z) * G(x, u) - s(x, z) * G(y, u);
    return out;
}

/// pi1 = 1/2 psi1(g):  pi1(x,y,z,u) = g(y,z)g(x,u) - g(x,z)g(y,u);
/// the curvature tensor of constant sectional curvature 1.
inline Tensor pi1(const Metric& g) {
    Tensor out = psi1(g.tensor(), g);
    for (MultiIndex mi(g.dim(), 4); !mi.done(); mi.next())
        out.at(*mi) = out.at(*mi) / Rational(2);
    return out;
}

enum class WeylConvention { standard, printed };

/// Weyl tensor of a (0,4) curvature tensor; requires dim >= 4 (the tensor
/// vanishes identically in lower dimensions and the construction is not
/// meaningful there).  Ricci and scalar curvature are recomputed internally
/// from r04, so the result is consistent by construction.
inline Tensor weyl(const Tensor& r04, const Metric& g,
                   WeylConvention convention = WeylConvention::standard) {
    const std::size_t m = g.dim();
    if (m < 4) throw error("weyl tensor requires dimension >= 4");
    if (r04.rank() != 4) throw error("weyl expects a (0,4) tensor");
    const std::size_t n = m;

    // rho(y,z) = g^{iu} R(e_i, y, z, e_u).
    Tensor rho(r04.space(), n, {Variance::Down, Variance::Down});
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
            Poly sum = Poly::zero(r04.space());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t u = 0; u < n; ++u)
                    sum += g.inverse()(i, u) * r04(i, y, z, u);
            rho(y, z) = sum;
        }
    const Poly tau = full_contract(g.inverse(), rho);

    const Rational c1(1, static_cast<long>(m) - 2);
    Tensor w = r04 - psi1(rho, g) * Poly(c1);
    if (convention == WeylConvention::standard) {
        const Rational c2(1, (static_cast<long>(m) - 1) *
                                 (static_cast<long>(m) - 2));
        w += pi1(g) * (tau * Poly(c2));
    } else {
        const Rational c3(1, static_cast<long>(m) - 1);
        w -= pi1(g) * (tau * Poly(c3));
    }
    return w;
}

}  // namespace norden
