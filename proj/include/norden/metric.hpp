#pragma once

// Pseudo-Riemannian metrics with exact rational entries.
//
// A Metric wraps a symmetric nondegenerate (0,2) tensor whose entries are
// rational constants (the value of a left-invariant metric on a basis of the
// Lie algebra), precomputing its exact inverse and its signature.  Free
// functions check the two compatibility conditions an almost complex
// structure must satisfy and build the associated (twin) metric
// g~(x,y) = g(x, Jy).

#include "norden/tensor.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace norden {

class Metric {
  public:
    explicit Metric(Tensor g) : g_(std::move(g)), ginv_(g_) {
        if (g_.rank() != 2 || g_.slots()[0] != Variance::Down ||
            g_.slots()[1] != Variance::Down)
            throw error("metric must be a (0,2) tensor");
        const std::size_t n = g_.dim();
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!g_(i, j).is_constant())
                    throw error("metric entries must be rational constants");
                if (g_(i, j) != g_(j, i))
                    throw error("metric is not symmetric at (" +
                                std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ")");
                m[i][j] = g_(i, j).constant_value();
            }
        }
        const auto inv = invert(m);
        ginv_ = Tensor(g_.space(), n, {Variance::Up, Variance::Up});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ginv_(i, j) = Poly::constant(g_.space(), inv[i][j]);
        signature_ = compute_signature(m);
    }

    const Tensor& tensor() const { return g_; }
    const Tensor& inverse() const { return ginv_; }
    std::size_t dim() const { return g_.dim(); }
    const SpacePtr& space() const { return g_.space(); }

    Rational entry(std::size_t i, std::size_t j) const {
        return g_(i, j).constant_value();
    }
    Rational inverse_entry(std::size_t i, std::size_t j) const {
        return ginv_(i, j).constant_value();
    }

    /// (number of positive, number of negative) diagonal entries after
    /// congruence diagonalization; well defined by Sylvester's law.
    std::pair<std::size_t, std::size_t> signature() const { return signature_; }

  private:
    static std::vector<std::vector<Rational>> invert(
        std::vector<std::vector<Rational>> m) {
        const std::size_t n = m.size();
        std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
        for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && m[pivot][col] == 0) ++pivot;
            if (pivot == n) throw error("metric is degenerate");
            std::swap(m[pivot], m[col]);
            std::swap(inv[pivot], inv[col]);
            const Rational p = m[col][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[col][j] /= p;
                inv[col][j] /= p;
            }
            for (std::size_t row = 0; row < n; ++row) {
                if (row == col || m[row][col] == 0) continue;
                const Rational f = m[row][col];
                for (std::size_t j = 0; j < n; ++j) {
                    m[row][j] -= f * m[col][j];
                    inv[row][j] -= f * inv[col][j];
                }
            }
        }
        return inv;
    }

    // Symmetric congruence diagonalization (simultaneous row/column
    // operations), exact over Q.
    static std::pair<std::size_t, std::size_t> compute_signature(
        std::vector<std::vector<Rational>> a) {
        const std::size_t n = a.size();
        std::size_t pos = 0, neg = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k][k] == 0) {
                std::size_t dj = n;
                for (std::size_t j = k + 1; j < n; ++j)
                    if (a[j][j] != 0) {
                        dj = j;
                        break;
                    }
                if (dj < n) {
                    for (std::size_t c = 0; c < n; ++c) std::swap(a[k][c], a[dj][c]);
                    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][k], a[r][dj]);
                } else {
                    std::size_t oj = n;
                    for (std::size_t j = k + 1; j < n; ++j)
                        if (a[k][j] != 0) {
                            oj = j;
                            break;
                        }
                    if (oj == n) throw error("metric is degenerate");
                    // Both diagonals vanish: adding row/col oj to row/col k
                    // makes a[k][k] = 2*a[k][oj] != 0.
                    for (std::size_t c = 0; c < n; ++c) a[k][c] += a[oj][c];
                    for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][oj];
                }
            }
            const Rational piv = a[k][k];
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a[i][k] == 0) continue;
                const Rational f = a[i][k] / piv;
                for (std::size_t c = 0; c < n; ++c) a[i][c] -= f * a[k][c];
                for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k];
            }
            if (piv > 0) ++pos;
            else ++neg;
        }
        return {pos, neg};
    }

    Tensor g_;
    Tensor ginv_;
    std::pair<std::size_t, std::size_t> signature_;
};

/// J∘J = -Id, the defining property of an almost complex structure.
inline bool is_almost_complex(const Tensor& J) {
    if (J.rank() != 2 || J.slots()[0] != Variance::Up ||
        J.slots()[1] != Variance::Down)
        return false;
    const std::size_t n = J.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Poly sum = Poly::zero(J.space());
            for (std::size_t k = 0; k < n; ++k) sum += J(i, k) * J(k, j);
            if (sum != Poly(Rational(i == j ? -1 : 0))) return false;
        }
    }
    return true;
}

/// g(Jx, Jy) = -g(x, y) for all x, y: the metric anti-compatibility that
/// distinguishes this geometry from the Hermitian one.
inline bool is_norden_pair(const Metric& g, const Tensor& J) {
    const std::size_t n = g.dim();
    if (J.dim() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Poly sum = g.tensor()(i, j);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    sum += J(a, i) * g.tensor()(a, b) * J(b, j);
            if (!sum.is_zero()) return false;
        }
    }
    return true;
}

/// The associated metric g~(x,y) = g(x, Jy); symmetric exactly when (g, J)
/// is a Norden pair, and then automatically nondegenerate of neutral
/// signature.  Throws when the input pair is not compatible.
inline Metric associated_metric(const Metric& g, const Tensor& J) {
    const std::size_t n = g.dim();
    Tensor gt(g.space(), n, {Variance::Down, Variance::Down});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly sum = Poly::zero(g.space());
            for (std::size_t k = 0; k < n; ++k)
                sum += g.tensor()(i, k) * J(k, j);
            gt(i, j) = sum;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gt(i, j) != gt(j, i))
                throw error(
                    "associated metric is not symmetric; (g, J) is not a "
                    "Norden pair");
    return Metric(std::move(gt));
}

}  // namespace norden
