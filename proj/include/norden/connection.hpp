#pragma once

// Affine connections on a Lie group through left-invariant data.
//
// For left-invariant vector fields all component functions are constant, so
// a connection is determined by the array Gamma^k_{ij} with
// nabla_{X_i} X_j = Gamma^k_{ij} X_k, stored as a (1,2) tensor [k][i][j]
// (i is the direction of differentiation).  Covariant derivatives and the
// curvature tensor then close over the structure constants with no
// pointwise derivative terms.

#include "norden/lie_algebra.hpp"
#include "norden/metric.hpp"
#include "norden/tensor.hpp"

#include <utility>
#include <vector>

namespace norden {

class Connection {
  public:
    explicit Connection(Tensor gamma) : gamma_(std::move(gamma)) {
        if (gamma_.rank() != 3 || gamma_.slots()[0] != Variance::Up ||
            gamma_.slots()[1] != Variance::Down ||
            gamma_.slots()[2] != Variance::Down)
            throw error("connection coefficients must form a (1,2) tensor");
    }

    /// Koszul formula restricted to left-invariant fields:
    ///   2 g(nabla_{X_i} X_j, X_m) = g([X_i,X_j],X_m) + g([X_m,X_i],X_j)
    ///                             + g([X_m,X_j],X_i).
    static Connection levi_civita(const LieAlgebra& L, const Metric& g) {
        const std::size_t n = L.dim();
        if (g.dim() != n) throw error("levi_civita: dimension mismatch");
        const Tensor& c = L.structure();
        // Indexed (i, j, k) = (direction, argument, component) here, then
        // permuted into the stored [k][i][j] layout.
        Tensor gamma(L.space(), n,
                     {Variance::Down, Variance::Down, Variance::Up});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Poly sum = Poly::zero(L.space());
                    for (std::size_t m = 0; m < n; ++m) {
                        Poly koszul = Poly::zero(L.space());
                        for (std::size_t l = 0; l < n; ++l)
                            koszul += c(l, i, j) * g.tensor()(l, m) +
                                      c(l, m, i) * g.tensor()(l, j) +
                                      c(l, m, j) * g.tensor()(l, i);
                        sum += g.inverse()(k, m) * koszul;
                    }
                    gamma(i, j, k) = sum / Rational(2);
                }
        // Stored as [k][i][j].
        return Connection(permute(gamma, {1, 2, 0}));
    }

    const Tensor& gamma() const { return gamma_; }
    std::size_t dim() const { return gamma_.dim(); }
    const SpacePtr& space() const { return gamma_.space(); }

    /// nabla_{X_i} X_j as a contravariant vector of components.
    Tensor derivative_basis(std::size_t i, std::size_t j) const {
        Tensor v(space(), dim(), {Variance::Up});
        for (std::size_t k = 0; k < dim(); ++k) v(k) = gamma_(k, i, j);
        return v;
    }

    /// Covariant derivative of a left-invariant tensor: prepends one
    /// covariant slot (the direction).  Component functions are constant, so
    ///   (nabla_d T) = + Gamma^a_{d l} T^{..l..}  for each contravariant slot
    ///                 - Gamma^l_{d b} T_{..l..}  for each covariant slot.
    Tensor covariant_derivative(const Tensor& t) const {
        if (t.dim() != dim())
            throw error("covariant_derivative: dimension mismatch");
        const std::size_t r = t.rank();
        std::vector<Variance> slots;
        slots.push_back(Variance::Down);
        for (auto v : t.slots()) slots.push_back(v);
        Tensor out(t.space(), dim(), slots);
        std::vector<std::size_t> src(r);
        for (MultiIndex mi(dim(), r + 1); !mi.done(); mi.next()) {
            const auto& j = *mi;
            const std::size_t d = j[0];
            Poly sum = Poly::zero(t.space());
            for (std::size_t slot = 0; slot < r; ++slot) {
                for (std::size_t l = 0; l < dim(); ++l) {
                    for (std::size_t k = 0; k < r; ++k) src[k] = j[k + 1];
                    src[slot] = l;
                    if (t.slots()[slot] == Variance::Up)
                        sum += gamma_(j[slot + 1], d, l) * t.at(src);
                    else
                        sum -= gamma_(l, d, j[slot + 1]) * t.at(src);
                }
            }
            out.at(j) = sum;
        }
        return out;
    }

    /// Curvature R(X_i, X_j) X_k = nabla_i nabla_j X_k - nabla_j nabla_i X_k
    /// - nabla_{[X_i, X_j]} X_k, returned as R^m_{ijk} (slots [m][i][j][k]).
    Tensor curvature(const LieAlgebra& L) const {
        const std::size_t n = dim();
        if (L.dim() != n) throw error("curvature: dimension mismatch");
        const Tensor& c = L.structure();
        Tensor out(space(), n,
                   {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        Poly sum = Poly::zero(space());
                        for (std::size_t l = 0; l < n; ++l)
                            sum += gamma_(l, j, k) * gamma_(m, i, l) -
                                   gamma_(l, i, k) * gamma_(m, j, l) -
                                   c(l, i, j) * gamma_(m, l, k);
                        out(m, i, j, k) = sum;
                    }
        return out;
    }

    /// Tor^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}; zero for any
    /// torsion-free connection.
    Tensor torsion(const LieAlgebra& L) const {
        const std::size_t n = dim();
        Tensor out(space(), n,
                   {Variance::Up, Variance::Down, Variance::Down});
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    out(k, i, j) = gamma_(k, i, j) - gamma_(k, j, i) -
                                   L.structure()(k, i, j);
        return out;
    }

    /// (nabla g) as a (0,3) tensor [direction][j][k]; zero iff the
    /// connection is metric.
    Tensor metric_compatibility_residual(const Metric& g) const {
        return covariant_derivative(g.tensor());
    }

  private:
    Tensor gamma_;
};

/// Lower the contravariant slot of R^m_{ijk} to the last position:
/// R(x,y,z,u) = g(R(x,y)z, u).
inline Tensor lower_curvature(const Tensor& r13, const Metric& g) {
    if (r13.rank() != 4 || r13.slots()[0] != Variance::Up)
        throw error("lower_curvature expects R^m_{ijk}");
    // apply_metric puts the lowered index first; move it to the end.
    return permute(apply_metric(r13, 0, g.tensor()), {3, 0, 1, 2});
}

}  // namespace norden
