// Property suite over randomized inputs.  Lie algebras are drawn from
// Jacobi-passing templates and conjugated by random unimodular integer
// basis changes (exact inverses, so Jacobi is preserved on the nose);
// Norden pairs are drawn from the block parametrization that the
// compatibility condition forces.  Checked on every sample:
//   - the Levi-Civita connection is torsion-free and metric,
//   - F is symmetric in its last two arguments and F(x,Jy,Jz) = F(x,y,z),
//   - the lowered curvature has the pair symmetries and satisfies the
//     first Bianchi identity,
//   - the additivity of the twin connection holds exactly when the cyclic
//     sum of F vanishes (both directions of the biconditional are
//     exercised: transported family instances stay in the vanishing class,
//     generic samples fall outside it).

#include <catch2/catch_amalgamated.hpp>

#include <norden/connection.hpp>
#include <norden/family.hpp>
#include <norden/lie_algebra.hpp>
#include <norden/metric.hpp>
#include <norden/structure_tensor.hpp>
#include <norden/transformation.hpp>
#include <norden/verify.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace {

using namespace norden;

using IntMatrix = std::vector<std::vector<long long>>;

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix a(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

/// A random element of SL(n, Z) together with its exact inverse, built as
/// a product of elementary shears.
struct BasisChange {
    IntMatrix a;
    IntMatrix a_inv;
};

BasisChange random_basis_change(std::size_t n, std::mt19937& rng) {
    BasisChange out{identity_matrix(n), identity_matrix(n)};
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> shear(-2, 2);
    std::uniform_int_distribution<int> count(3, 8);
    const int shears = count(rng);
    for (int step = 0; step < shears; ++step) {
        const std::size_t row = pick(rng);
        std::size_t col = pick(rng);
        while (col == row) col = pick(rng);
        const long long s = shear(rng);
        if (s == 0) continue;
        // a <- a * E_{row,col}(s): column `col` gains s * column `row`.
        for (std::size_t i = 0; i < n; ++i) out.a[i][col] += s * out.a[i][row];
        // a_inv <- E^{-1} * a_inv: row `row` loses s * row `col`.
        for (std::size_t j = 0; j < n; ++j)
            out.a_inv[row][j] -= s * out.a_inv[col][j];
    }
    return out;
}

Poly entry(const IntMatrix& m, std::size_t i, std::size_t j) {
    return Poly(Rational(m[i][j]));
}

/// Structure constants in the sheared basis Y_i = sum_p a[p][i] X_p:
/// c'[k][i][j] = a_inv[k][m] c[m][p][q] a[p][i] a[q][j].
Tensor transport_structure(const Tensor& c, const BasisChange& bc) {
    const std::size_t n = c.dim();
    Tensor out(c.space(), n,
               {Variance::Up, Variance::Down, Variance::Down});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Poly sum = Poly::zero(c.space());
                for (std::size_t m = 0; m < n; ++m)
                    for (std::size_t p = 0; p < n; ++p)
                        for (std::size_t q = 0; q < n; ++q) {
                            const Poly term = c(m, p, q) *
                                              entry(bc.a_inv, k, m) *
                                              entry(bc.a, p, i) *
                                              entry(bc.a, q, j);
                            sum += term;
                        }
                out(k, i, j) = sum;
            }
    return out;
}

Tensor transport_metric(const Tensor& g, const BasisChange& bc) {
    const std::size_t n = g.dim();
    Tensor out(g.space(), n, {Variance::Down, Variance::Down});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly sum = Poly::zero(g.space());
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    sum += g(p, q) * entry(bc.a, p, i) * entry(bc.a, q, j);
            out(i, j) = sum;
        }
    return out;
}

Tensor transport_endo(const Tensor& j, const BasisChange& bc) {
    const std::size_t n = j.dim();
    Tensor out(j.space(), n, {Variance::Up, Variance::Down});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Poly sum = Poly::zero(j.space());
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t p = 0; p < n; ++p)
                    sum += entry(bc.a_inv, a, m) * j(m, p) * entry(bc.a, p, b);
            out(a, b) = sum;
        }
    return out;
}

/// The block almost complex structure J X_a = X_{a+m}, J X_{a+m} = -X_a.
Tensor canonical_j(std::size_t n) {
    const std::size_t m = n / 2;
    Tensor j(empty_space(), n, {Variance::Up, Variance::Down});
    for (std::size_t a = 0; a < m; ++a) {
        j(a + m, a) = Poly(1);
        j(a, a + m) = Poly(-1);
    }
    return j;
}

/// A random metric satisfying g(Jx, Jy) = -g(x, y) for the block J: the
/// condition forces g = [[A, B], [B, -A]] with A, B symmetric.  Retries
/// until the result is nondegenerate.
Metric random_norden_metric(std::size_t n, std::mt19937& rng) {
    const std::size_t m = n / 2;
    std::uniform_int_distribution<int> small(-2, 2);
    for (;;) {
        Tensor g(empty_space(), n, {Variance::Down, Variance::Down});
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b) {
                const Poly top(Rational(small(rng)));
                const Poly mix(Rational(small(rng)));
                g(a, b) = top;
                g(b, a) = top;
                g(a + m, b + m) = -top;
                g(b + m, a + m) = -top;
                g(a, b + m) = mix;
                g(b + m, a) = mix;
                g(b, a + m) = mix;
                g(a + m, b) = mix;
            }
        try {
            return Metric(g);
        } catch (const error&) {
            // degenerate draw; try again
        }
    }
}

/// Jacobi-passing template algebras (structure constants for i < j).
Tensor template_structure(std::size_t n, std::size_t which,
                          std::mt19937& rng) {
    Tensor c(empty_space(), n,
             {Variance::Up, Variance::Down, Variance::Down});
    auto set = [&c](std::size_t k, std::size_t i, std::size_t j,
                    const Rational& v) {
        c(k, i, j) = Poly(v);
        c(k, j, i) = Poly(-v);
    };
    std::uniform_int_distribution<int> coeff(1, 3);
    if (n == 2) {
        if (which % 2 == 1) set(1, 0, 1, Rational(coeff(rng)));  // affine
        return c;  // abelian otherwise
    }
    switch (which % 5) {
        case 0:  // abelian
            break;
        case 1:  // Heisenberg + center
            set(2, 0, 1, Rational(coeff(rng)));
            break;
        case 2:  // split solvable: ad X_1 diagonal on X_2, X_3
            set(1, 0, 1, Rational(coeff(rng)));
            set(2, 0, 2, Rational(-coeff(rng), 2));
            break;
        case 3:  // compact form plus center
            set(2, 0, 1, Rational(1));
            set(0, 1, 2, Rational(1));
            set(1, 2, 0, Rational(1));
            break;
        case 4:  // split simple form plus center
            set(1, 0, 1, Rational(2));
            set(2, 0, 2, Rational(-2));
            set(0, 1, 2, Rational(1));
            break;
    }
    return c;
}

struct Sample {
    LieAlgebra algebra;
    Metric metric;
    Tensor j;
    bool expect_vanishing_cyclic_sum;
};

Sample generic_sample(std::size_t n, std::size_t which, std::mt19937& rng) {
    const BasisChange bc = random_basis_change(n, rng);
    const Tensor c =
        transport_structure(template_structure(n, which, rng), bc);
    LieAlgebra algebra(c);
    REQUIRE(algebra.satisfies_jacobi());
    return {std::move(algebra), random_norden_metric(n, rng),
            canonical_j(n), false};
}

/// A transported instance of the built-in family: every tensor is moved by
/// the same basis change, so the sample is isomorphic to the original and
/// its cyclic sum still vanishes.
Sample transported_family_sample(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    std::array<Rational, 4> lambda;
    for (Rational& v : lambda) v = Rational(num(rng), den(rng));
    const FamilyModel base = make_numeric_family(lambda);
    const BasisChange bc = random_basis_change(4, rng);
    LieAlgebra algebra(transport_structure(base.algebra.structure(), bc));
    REQUIRE(algebra.satisfies_jacobi());
    Metric metric(transport_metric(base.metric.tensor(), bc));
    Tensor j = transport_endo(base.j, bc);
    REQUIRE(is_almost_complex(j));
    REQUIRE(is_norden_pair(metric, j));
    return {std::move(algebra), std::move(metric), std::move(j), true};
}

void check_sample(const Sample& s) {
    const std::size_t n = s.algebra.dim();
    REQUIRE(is_norden_pair(s.metric, s.j));

    const Connection nabla = Connection::levi_civita(s.algebra, s.metric);
    CHECK(nabla.torsion(s.algebra).is_zero());
    CHECK(nabla.metric_compatibility_residual(s.metric).is_zero());

    const Tensor f = f_tensor(nabla, s.j, s.metric);
    CHECK(f == permute(f, {0, 2, 1}));
    CHECK(compose(compose(f, 1, s.j), 2, s.j) == f);

    const Tensor r04 =
        lower_curvature(nabla.curvature(s.algebra), s.metric);
    CHECK(r04 == -permute(r04, {1, 0, 2, 3}));
    CHECK(r04 == -permute(r04, {0, 1, 3, 2}));
    CHECK(r04 == permute(r04, {2, 3, 0, 1}));
    CHECK(detail::first_bianchi_holds(r04));

    // Additivity of the twin connection holds iff the cyclic sum of F
    // vanishes.
    const bool vanishing = cyclic_sum(f).is_zero();
    if (s.expect_vanishing_cyclic_sum) REQUIRE(vanishing);
    const Metric assoc = associated_metric(s.metric, s.j);
    const Connection tilde = Connection::levi_civita(s.algebra, assoc);
    const TransferTensor t =
        transfer_tensor(nabla.covariant_derivative(s.j), s.j, s.metric);
    const bool additive = tilde.gamma() == nabla.gamma() + t.mixed;
    CHECK(additive == vanishing);

    if (n >= 4) {
        const auto [ricci, scalar] =
            ricci_and_scalar(nabla.curvature(s.algebra), s.metric);
        const Tensor w = weyl(r04, s.metric, WeylConvention::standard);
        CHECK(detail::weyl_trace_free(w, s.metric));
        (void)ricci;
        (void)scalar;
    }
}

}  // namespace

TEST_CASE("random models: connection, structure tensor, curvature") {
    std::mt19937 rng(20260814);
    std::size_t vanishing = 0;
    std::size_t nonvanishing = 0;
    for (std::size_t trial = 0; trial < 40; ++trial) {
        const Sample s = generic_sample(4, trial, rng);
        INFO("dim-4 generic sample " << trial);
        check_sample(s);
        const Connection nabla =
            Connection::levi_civita(s.algebra, s.metric);
        if (cyclic_sum(f_tensor(nabla, s.j, s.metric)).is_zero())
            ++vanishing;
        else
            ++nonvanishing;
    }
    // Both branches of the biconditional must have been exercised.
    CHECK(vanishing > 0);    // abelian draws land here
    CHECK(nonvanishing > 0); // generic draws land here
}

TEST_CASE("random models in dimension two") {
    std::mt19937 rng(424242);
    for (std::size_t trial = 0; trial < 12; ++trial) {
        INFO("dim-2 sample " << trial);
        check_sample(generic_sample(2, trial, rng));
    }
}

TEST_CASE("transported family instances stay in the vanishing class") {
    std::mt19937 rng(31415926);
    for (std::size_t trial = 0; trial < 12; ++trial) {
        INFO("transported family sample " << trial);
        check_sample(transported_family_sample(rng));
    }
}
