// Acceptance gate: one line per criterion, exit 0 iff every criterion
// passes.  Erratum-matches (components whose printed value differs from
// the exact computation, with the correction pinned down elsewhere in the
// suite) count as passes and are called out on the criterion line.

#include <norden/connection.hpp>
#include <norden/curvature.hpp>
#include <norden/family.hpp>
#include <norden/metric.hpp>
#include <norden/structure_tensor.hpp>
#include <norden/verify.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

using namespace norden;

int spawn(const std::string& command) {
    const int status = std::system((command + " >/dev/null 2>&1").c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

struct Subset {
    std::size_t total = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> errata;
    std::string first_failure;
};

Subset collect(const VerificationReport& rep,
               const std::function<bool(const Check&)>& want) {
    Subset out;
    for (const Check& c : rep.checks) {
        if (!want(c)) continue;
        ++out.total;
        if (c.status == CheckStatus::erratum_match) out.errata.push_back(c.name);
        if (c.status == CheckStatus::mismatch) {
            ++out.mismatches;
            if (out.first_failure.empty())
                out.first_failure = c.name + ": computed " + c.computed +
                                    ", expected " + c.expected;
        }
    }
    return out;
}

bool has_prefix(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

const Check* find(const VerificationReport& rep, const std::string& name) {
    for (const Check& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

int failures = 0;

void report(int number, bool pass, const std::string& description) {
    std::printf("criterion %2d: %s  %s\n", number, pass ? "pass" : "FAIL",
                description.c_str());
    if (!pass) ++failures;
}

std::string errata_note(const Subset& s) {
    if (s.errata.empty()) return "";
    std::string note = " (erratum-match: ";
    for (std::size_t i = 0; i < s.errata.size(); ++i) {
        if (i) note += ", ";
        note += s.errata[i];
    }
    return note + ")";
}

/// Hyperbolic 4-space as a solvable group: [X0, Xi] = Xi with the
/// Euclidean metric has constant sectional curvature, so the standard
/// Weyl normalization must annihilate it.
bool constant_curvature_sanity() {
    const SpacePtr s = empty_space();
    Tensor c(s, 4, {Variance::Up, Variance::Down, Variance::Down});
    for (std::size_t i = 1; i < 4; ++i) {
        c(i, 0, i) = Poly(1);
        c(i, i, 0) = Poly(-1);
    }
    Tensor gt(s, 4, {Variance::Down, Variance::Down});
    for (std::size_t i = 0; i < 4; ++i) gt(i, i) = Poly(1);
    const LieAlgebra algebra(std::move(c));
    const Metric g(std::move(gt));
    const Connection nabla = Connection::levi_civita(algebra, g);
    const Tensor r04 = lower_curvature(nabla.curvature(algebra), g);
    if (r04 != -pi1(g)) return false;  // not constant curvature: bad input
    return weyl(r04, g, WeylConvention::standard).is_zero();
}

}  // namespace

int main() {
    const VerificationReport symbolic = verify_family();
    const VerificationReport printed_run =
        verify_family(WeylConvention::printed);
    const VerificationReport origin =
        verify_family({Rational(0), Rational(0), Rational(0), Rational(0)});

    // 1. The family is a valid input for every parameter value: Jacobi and
    //    ad-invariance residuals vanish identically, both metrics are
    //    Norden-compatible with J.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return c.name == "jacobi" || c.name == "ad_invariance" ||
                   c.name == "norden_g" || c.name == "norden_g_tilde";
        });
        report(1, s.total == 4 && s.mismatches == 0,
               "family validity: Jacobi, ad-invariance, Norden for g and g~" +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 2. Structure-tensor tables for both metrics, with the conjugation
    //    path F~ = -F(J., ., .) agreeing with the direct definition.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return has_prefix(c.name, "F_") || has_prefix(c.name, "Ft_") ||
                   c.name == "conjugate_f";
        });
        report(2, s.total == 83 && s.mismatches == 0,
               "F and F~ tables, both construction paths" + errata_note(s) +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 3. Both structures classify into the cyclic-sum-free class with
    //    vanishing trace form; the zero parameter point is integrable.
    {
        const FamilyModel m = make_symbolic_family();
        const Connection nabla = Connection::levi_civita(m.algebra, m.metric);
        const Metric assoc = associated_metric(m.metric, m.j);
        const Connection tilde = Connection::levi_civita(m.algebra, assoc);
        const ClassificationResult cls =
            classify(f_tensor(nabla, m.j, m.metric), m.j, m.metric);
        const ClassificationResult cls_tilde =
            classify(f_tensor(tilde, m.j, assoc), m.j, assoc);
        const Check* cg = find(symbolic, "class_g");
        const Check* cgt = find(symbolic, "class_g_tilde");
        const Check* og = find(origin, "class_g");
        const Check* ogt = find(origin, "class_g_tilde");
        const bool pass = cls.w3 && cls.theta.is_zero() && cls_tilde.w3 &&
                          cls_tilde.theta.is_zero() && cg && cgt && og &&
                          ogt && cg->status == CheckStatus::match &&
                          cgt->status == CheckStatus::match &&
                          og->status == CheckStatus::match &&
                          ogt->status == CheckStatus::match &&
                          og->computed == "w0 w1 w2 w3";
        report(3, pass,
               "classification: w3 with vanishing trace form on both sides; "
               "all classes at the zero point");
    }

    // 4. Curvature table for g, with the single sign-corrected component
    //    flagged, and the scalar curvature reproduced exactly.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return has_prefix(c.name, "R_") || c.name == "tau";
        });
        const Check* r1441 = find(symbolic, "R_1441");
        const bool pass = s.mismatches == 0 && r1441 &&
                          r1441->status == CheckStatus::erratum_match &&
                          find(symbolic, "tau") &&
                          find(symbolic, "tau")->status == CheckStatus::match;
        report(4, pass,
               "curvature table; R_1441 erratum-match (corrected to "
               "1/4*l1^2 - 1/4*l4^2); tau exact" +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 5. The curvature of the twin connection agrees along every path:
    //    direct definition, R + Q, the closed-form right-hand side, and
    //    the published component list.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return has_prefix(c.name, "Rt_") ||
                   c.name == "curvature_additivity" ||
                   c.name == "curvature_closed_form";
        });
        report(5, s.total == 23 && s.mismatches == 0,
               "R~ four-way agreement (definition, R+Q, closed form, table)" +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 6. The combinations S and P are shared by the two connections, and
    //    the transfer tensor T and Q flip sign.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return c.name == "invariance_s" || c.name == "invariance_p" ||
                   c.name == "transfer_flip" || c.name == "q_flip";
        });
        report(6, s.total == 4 && s.mismatches == 0,
               "invariance of S and P; T~ = -T and Q~ = -Q" +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 7. Square norms, scalar curvatures, their proportionality, and the
    //    value of both norms on the distinguished vector field.
    {
        const Subset s = collect(symbolic, [](const Check& c) {
            return c.name == "snorm_J" || c.name == "snorm_Jt" ||
                   c.name == "tau" || c.name == "taut" ||
                   c.name == "tau_snorm_relation" ||
                   c.name == "taut_snorm_relation" || c.name == "cone_g" ||
                   c.name == "cone_g_tilde";
        });
        report(7, s.total == 8 && s.mismatches == 0,
               "norms and scalar curvatures with their closed forms" +
                   errata_note(s) +
                   (s.mismatches ? " -- " + s.first_failure : ""));
    }

    // 8. Weyl: under the standard normalization W(g) vanishes identically,
    //    a constant-curvature input is annihilated, and the W~ table is
    //    reproduced entrywise.  Both conventions are recorded; the
    //    criterion fails only if no convention reproduces both facts.
    {
        auto weyl_subset = [](const Check& c) {
            return has_prefix(c.name, "Wt_") || c.name == "weyl_g_vanishes" ||
                   c.name == "equivalence_g_tilde";
        };
        const Subset std_run = collect(symbolic, weyl_subset);
        const Subset printed = collect(printed_run, weyl_subset);
        const bool standard_ok = std_run.mismatches == 0;
        const bool printed_ok = printed.mismatches == 0;
        const bool sanity = constant_curvature_sanity();
        std::string note = standard_ok
                               ? " [standard: reproduces both; printed: " +
                                     std::string(printed_ok ? "also consistent"
                                                            : "does not") +
                                     "]"
                               : "";
        report(8, (standard_ok || printed_ok) && sanity,
               "Weyl: W(g) = 0 and the W~ table under a recorded "
               "normalization; constant-curvature input annihilated" +
                   note);
    }

    // 9. The three published parameter points run end to end -- through
    //    the library and through the command-line tool -- with the
    //    expected isotropy flags.
    {
        struct Point {
            std::array<Rational, 4> lambda;
            const char* text;
            bool flag_g;
            bool flag_g_tilde;
        };
        const Point points[] = {
            {{Rational(1), Rational(2), Rational(2), Rational(-1)},
             "1,2,2,-1", true, true},
            {{Rational(1), Rational(0), Rational(1), Rational(0)},
             "1,0,1,0", true, false},
            {{Rational(1), Rational(1), Rational(2), Rational(-2)},
             "1,1,2,-2", false, true},
        };
        bool pass = true;
        std::string detail;
        for (const Point& p : points) {
            const VerificationReport rep = verify_family(p.lambda);
            const IsotropicFlags flags = isotropic_flags(p.lambda);
            const int cli = spawn(std::string(NORDEN_CLI_PATH) +
                                  " verify --lambda " + p.text);
            if (!rep.ok() || flags.g != p.flag_g ||
                flags.g_tilde != p.flag_g_tilde || cli != 0) {
                pass = false;
                detail += std::string(" [") + p.text + "]";
            }
        }
        report(9, pass,
               "published parameter points verified end to end with the "
               "expected isotropy flags" +
                   (pass ? "" : " -- failing at" + detail));
    }

    // 10. The randomized property suite (torsion-free + metric connection,
    //     F-symmetries, curvature symmetries + first Bianchi, the
    //     additivity biconditional) passes on every generated sample.
    {
        const int code = spawn(NORDEN_PROPERTIES_PATH);
        report(10, code == 0,
               "randomized property suite over Jacobi-passing algebras" +
                   (code == 0 ? ""
                              : " -- suite exited with code " +
                                    std::to_string(code)));
    }

    std::printf("summary: %d/10 criteria pass\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
