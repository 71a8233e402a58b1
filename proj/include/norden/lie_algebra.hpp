#pragma once

// Finite-dimensional real Lie algebras in a fixed basis.
//
// The bracket is stored through its structure constants
// [X_i, X_j] = c^k_{ij} X_k as a (1,2) tensor with slot order [k][i][j].
// Construction validates antisymmetry; the Jacobi identity and
// ad-invariance of a metric are exposed as residual tensors so callers can
// either assert exact closure or inspect a concrete witness.

#include "norden/metric.hpp"
#include "norden/tensor.hpp"

#include <utility>

namespace norden {

class LieAlgebra {
  public:
    explicit LieAlgebra(Tensor c) : c_(std::move(c)) {
        if (c_.rank() != 3 || c_.slots()[0] != Variance::Up ||
            c_.slots()[1] != Variance::Down || c_.slots()[2] != Variance::Down)
            throw error("structure constants must form a (1,2) tensor");
        const std::size_t n = c_.dim();
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (c_(k, i, j) != -c_(k, j, i))
                        throw error("structure constants not antisymmetric at "
                                    "c^" +
                                    std::to_string(k + 1) + "_{" +
                                    std::to_string(i + 1) +
                                    std::to_string(j + 1) + "}");
    }

    std::size_t dim() const { return c_.dim(); }
    const SpacePtr& space() const { return c_.space(); }
    const Tensor& structure() const { return c_; }

    /// [X_i, X_j] as a contravariant vector of components.
    Tensor bracket_basis(std::size_t i, std::size_t j) const {
        Tensor v(space(), dim(), {Variance::Up});
        for (std::size_t k = 0; k < dim(); ++k) v(k) = c_(k, i, j);
        return v;
    }

    /// Jac^m_{ijk} = sum_l ( c^m_{il} c^l_{jk} + c^m_{jl} c^l_{ki}
    ///                      + c^m_{kl} c^l_{ij} );
    /// identically zero exactly when the bracket satisfies Jacobi.
    Tensor jacobi_residual() const {
        const std::size_t n = dim();
        Tensor out(space(), n,
                   {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        Poly sum = Poly::zero(space());
                        for (std::size_t l = 0; l < n; ++l)
                            sum += c_(m, i, l) * c_(l, j, k) +
                                   c_(m, j, l) * c_(l, k, i) +
                                   c_(m, k, l) * c_(l, i, j);
                        out(m, i, j, k) = sum;
                    }
        return out;
    }

    bool satisfies_jacobi() const { return jacobi_residual().is_zero(); }

    /// r_{xyz} = g([x,y],z) + g(y,[x,z]); identically zero exactly when g is
    /// ad-invariant (the bi-invariant case, where the Levi-Civita connection
    /// collapses to half the bracket).
    Tensor ad_invariance_residual(const Metric& g) const {
        const std::size_t n = dim();
        Tensor out(space(), n, {Variance::Down, Variance::Down, Variance::Down});
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    Poly sum = Poly::zero(space());
                    for (std::size_t l = 0; l < n; ++l)
                        sum += c_(l, x, y) * g.tensor()(l, z) +
                               c_(l, x, z) * g.tensor()(l, y);
                    out(x, y, z) = sum;
                }
        return out;
    }

  private:
    Tensor c_;
};

}  // namespace norden
