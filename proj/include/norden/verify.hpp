#pragma once

// Expected component tables and closed forms for the bundled 4-parameter
// family, an erratum-aware comparison run over the whole pipeline, and a
// generic verification run for arbitrary models.
//
// The expected values transcribe a published component list for this
// family.  Four groups of entries in that list are inconsistent with the
// rest of it; each is refuted by independent computations that agree with
// one another and with the list's own downstream consequences.  They are
// stored with both the printed and the corrected value and are reported
// with status `erratum-match` when the computed value agrees with the
// correction:
//   - R_1441: printed -1/4(l1^2 - l4^2), corrected +1/4(l1^2 - l4^2); the
//     corrected sign is what the direct curvature expansion gives, and it
//     is the only one consistent with the printed scalar curvature tau.
//   - F_211 = F_233: printed -1/2 l2, corrected -l2; the whole value is
//     forced by the printed |nabla J|^2 and by the conjugation identity.
//   - Ft_411 = Ft_433: printed -1/2 l2, corrected -l2; the image of F_211
//     under the conjugation identity, forced by the printed |nabla' J|^2.
//   - taut: printed +5(l1 l3 + l2 l4), corrected -5(l1 l3 + l2 l4);
//     contracting the printed tilde curvature table (which is consistent
//     as printed) gives the - sign.
// Two formula-level sign variants (the bracket form of the tilde
// connection and the orientation of the connection-difference identity)
// are reported the same way: the corrected form must hold and the printed
// one fails whenever the transfer tensor is nonzero.

#include "norden/curvature.hpp"
#include "norden/family.hpp"
#include "norden/structure_tensor.hpp"
#include "norden/transformation.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace norden {

enum class CheckStatus { match, mismatch, erratum_match };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::match: return "match";
        case CheckStatus::mismatch: return "mismatch";
        case CheckStatus::erratum_match: return "erratum-match";
    }
    return "unknown";
}

struct Check {
    std::string section;   // "tables", "closed-forms", or "theorems"
    std::string name;      // 1-based component name or identity name
    CheckStatus status = CheckStatus::match;
    std::string computed;
    std::string expected;  // the effective (corrected) expectation
    std::string printed;   // nonempty only for erratum entries
    std::string note;
};

struct VerificationReport {
    std::string mode;        // "symbolic" or the parameter point
    std::string convention;  // Weyl convention used for the Weyl checks
    std::vector<Check> checks;
    std::size_t matches = 0;
    std::size_t erratum_matches = 0;
    std::size_t mismatches = 0;

    void add(Check c) {
        switch (c.status) {
            case CheckStatus::match: ++matches; break;
            case CheckStatus::erratum_match: ++erratum_matches; break;
            case CheckStatus::mismatch: ++mismatches; break;
        }
        checks.push_back(std::move(c));
    }
    bool ok() const { return mismatches == 0; }
};

struct TableEntry {
    std::string name;               // e.g. "R_1441"
    std::vector<std::size_t> idx;   // 1-based component indices
    Poly value;                     // effective (corrected) value
    Poly printed;                   // printed value; meaningful iff erratum
    bool erratum = false;
    std::string note;
};

struct ExpectedTables {
    SpacePtr space;  // the parameter space {l1, l2, l3, l4}
    std::vector<TableEntry> f_table;        // 40 components, all nonzero ones
    std::vector<TableEntry> f_tilde_table;  // 40 components
    std::vector<TableEntry> r_table;        // 18 orbit representatives
    std::vector<TableEntry> r_tilde_table;  // 20 orbit representatives
    std::vector<TableEntry> w_tilde_table;  // 8 orbit representatives
    Poly snorm_j;            // |nabla J|^2  = 4(l1^2+l2^2-l3^2-l4^2)
    Poly snorm_j_tilde;      // |nabla' J|^2 = -8(l1 l3 + l2 l4)
    Poly tau;                // -3/2(l1^2+l2^2-l3^2-l4^2)
    Poly tau_tilde;          // corrected: -5(l1 l3 + l2 l4)
    Poly tau_tilde_printed;  // printed:   +5(l1 l3 + l2 l4)
    Poly condition_g;        // isotropic condition for g
    Poly condition_g_tilde;  // isotropic condition for the associated metric
};

/// The transcribed component tables and closed forms, with erratum entries
/// carrying both the printed and the corrected polynomial.
inline ExpectedTables expected_tables() {
    ExpectedTables t;
    t.space = make_space({"l1", "l2", "l3", "l4"});
    const SpacePtr& s = t.space;
    auto val = [&](const char* text) { return parse_poly(text, s); };
    auto add = [&](std::vector<TableEntry>& tab, const std::string& prefix,
                   const char* ids, const char* text,
                   const char* printed = nullptr, const char* note = "") {
        std::istringstream stream(ids);
        std::string tok;
        while (stream >> tok) {
            TableEntry e;
            e.name = prefix + "_" + tok;
            for (char ch : tok)
                e.idx.push_back(static_cast<std::size_t>(ch - '0'));
            e.value = val(text);
            e.printed = printed ? val(printed) : Poly::zero(s);
            e.erratum = printed != nullptr;
            e.note = note;
            tab.push_back(std::move(e));
        }
    };

    // Fundamental tensor of the g side: every nonzero component.
    add(t.f_table, "F", "122 144", "-l1");
    add(t.f_table, "F", "212 221 234 243 414 441", "1/2*l1");
    add(t.f_table, "F", "423 432", "-1/2*l1");
    add(t.f_table, "F", "112 121 134 143", "1/2*l2");
    add(t.f_table, "F", "211 233", "-l2", "-1/2*l2",
        "whole value forced by the printed |nabla J|^2 and by the "
        "conjugation identity");
    add(t.f_table, "F", "314 341", "-1/2*l2");
    add(t.f_table, "F", "323 332", "1/2*l2");
    add(t.f_table, "F", "214 241", "1/2*l3");
    add(t.f_table, "F", "223 232", "-1/2*l3");
    add(t.f_table, "F", "322 344", "l3");
    add(t.f_table, "F", "412 421 434 443", "-1/2*l3");
    add(t.f_table, "F", "114 141", "-1/2*l4");
    add(t.f_table, "F", "123 132", "1/2*l4");
    add(t.f_table, "F", "312 321 334 343", "-1/2*l4");
    add(t.f_table, "F", "411 433", "l4");

    // Fundamental tensor of the associated side.
    add(t.f_tilde_table, "Ft", "214 241", "-1/2*l1");
    add(t.f_tilde_table, "Ft", "223 232", "1/2*l1");
    add(t.f_tilde_table, "Ft", "322 344", "-l1");
    add(t.f_tilde_table, "Ft", "412 421 434 443", "1/2*l1");
    add(t.f_tilde_table, "Ft", "114 141", "1/2*l2");
    add(t.f_tilde_table, "Ft", "123 132", "-1/2*l2");
    add(t.f_tilde_table, "Ft", "312 321 334 343", "1/2*l2");
    add(t.f_tilde_table, "Ft", "411 433", "-l2", "-1/2*l2",
        "image of the corrected F_211 under the conjugation identity; "
        "forced by the printed |nabla' J|^2");
    add(t.f_tilde_table, "Ft", "122 144", "-l3");
    add(t.f_tilde_table, "Ft", "212 221 234 243 414 441", "1/2*l3");
    add(t.f_tilde_table, "Ft", "423 432", "-1/2*l3");
    add(t.f_tilde_table, "Ft", "112 121 134 143", "1/2*l4");
    add(t.f_tilde_table, "Ft", "211 233", "-l4");
    add(t.f_tilde_table, "Ft", "314 341", "-1/2*l4");
    add(t.f_tilde_table, "Ft", "323 332", "1/2*l4");

    // Curvature of the g side: orbit representatives.
    add(t.r_table, "R", "1221", "-1/4*l1^2 - 1/4*l2^2");
    add(t.r_table, "R", "1331", "1/4*l2^2 - 1/4*l4^2");
    add(t.r_table, "R", "1441", "1/4*l1^2 - 1/4*l4^2",
        "-1/4*l1^2 + 1/4*l4^2",
        "sign corrected: the direct expansion gives +, and only the + sign "
        "reproduces the printed scalar curvature");
    add(t.r_table, "R", "2332", "1/4*l2^2 - 1/4*l3^2");
    add(t.r_table, "R", "2442", "1/4*l1^2 - 1/4*l3^2");
    add(t.r_table, "R", "3443", "1/4*l3^2 + 1/4*l4^2");
    add(t.r_table, "R", "1341 2342", "-1/4*l1*l2");
    add(t.r_table, "R", "2132", "1/4*l1*l3");
    add(t.r_table, "R", "4134", "-1/4*l1*l3");
    add(t.r_table, "R", "1231", "1/4*l1*l4");
    add(t.r_table, "R", "4234", "-1/4*l1*l4");
    add(t.r_table, "R", "2142", "1/4*l2*l3");
    add(t.r_table, "R", "3143", "-1/4*l2*l3");
    add(t.r_table, "R", "1241", "1/4*l2*l4");
    add(t.r_table, "R", "3243", "-1/4*l2*l4");
    add(t.r_table, "R", "3123 4124", "1/4*l3*l4");

    // Curvature of the associated side.
    add(t.r_tilde_table, "Rt", "1221 3443", "l1*l3 + l2*l4");
    add(t.r_tilde_table, "Rt", "1441 2332", "-l1*l3 - l2*l4");
    add(t.r_tilde_table, "Rt", "1331", "-1/2*l2*l4");
    add(t.r_tilde_table, "Rt", "2442", "-1/2*l1*l3");
    add(t.r_tilde_table, "Rt", "1234 1432", "3/4*l1*l3 + 3/4*l2*l4");
    add(t.r_tilde_table, "Rt", "1241",
        "l1^2 + 1/2*l2^2 + 1/4*l3^2 - 1/2*l4^2");
    add(t.r_tilde_table, "Rt", "2132",
        "1/2*l1^2 + l2^2 - 1/2*l3^2 + 1/4*l4^2");
    add(t.r_tilde_table, "Rt", "4134",
        "-1/2*l1^2 + 1/4*l2^2 + 1/2*l3^2 + l4^2");
    add(t.r_tilde_table, "Rt", "3243",
        "1/4*l1^2 - 1/2*l2^2 + l3^2 + 1/2*l4^2");
    add(t.r_tilde_table, "Rt", "1231 2142", "-1/2*l1*l2 - 3/4*l3*l4");
    add(t.r_tilde_table, "Rt", "1341 4124", "-1/2*l1*l4 + 3/4*l2*l3");
    add(t.r_tilde_table, "Rt", "3143 4234", "-3/4*l1*l2 - 1/2*l3*l4");
    add(t.r_tilde_table, "Rt", "3123 2342", "3/4*l1*l4 - 1/2*l2*l3");

    // Weyl tensor of the associated side (standard normalization).
    add(t.w_tilde_table, "Wt", "1221 3443", "l1*l3 + l2*l4");
    add(t.w_tilde_table, "Wt", "1441 2332", "-l1*l3 - l2*l4");
    add(t.w_tilde_table, "Wt", "1234 1432", "1/3*l1*l3 + 1/3*l2*l4");
    add(t.w_tilde_table, "Wt", "1331 2442", "-2/3*l1*l3 - 2/3*l2*l4");

    t.snorm_j = val("4*l1^2 + 4*l2^2 - 4*l3^2 - 4*l4^2");
    t.snorm_j_tilde = val("-8*l1*l3 - 8*l2*l4");
    t.tau = val("-3/2*l1^2 - 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2");
    t.tau_tilde = val("-5*l1*l3 - 5*l2*l4");
    t.tau_tilde_printed = val("5*l1*l3 + 5*l2*l4");
    t.condition_g = val("l1^2 + l2^2 - l3^2 - l4^2");
    t.condition_g_tilde = val("l1*l3 + l2*l4");
    return t;
}

struct IsotropicFlags {
    Poly condition_g;        // constant in numeric mode
    Poly condition_g_tilde;  // constant in numeric mode
    bool g = false;          // meaningful in numeric mode only
    bool g_tilde = false;    // meaningful in numeric mode only
};

/// Symbolic mode: the two condition polynomials.
inline IsotropicFlags isotropic_flags() {
    const ExpectedTables t = expected_tables();
    return {t.condition_g, t.condition_g_tilde, false, false};
}

/// Numeric mode: the conditions evaluated at the point, plus booleans.
inline IsotropicFlags isotropic_flags(const std::array<Rational, 4>& lambda) {
    const ExpectedTables t = expected_tables();
    const std::vector<Rational> point(lambda.begin(), lambda.end());
    IsotropicFlags f{Poly(t.condition_g.eval(point)),
                     Poly(t.condition_g_tilde.eval(point)), false, false};
    f.g = f.condition_g.is_zero();
    f.g_tilde = f.condition_g_tilde.is_zero();
    return f;
}

namespace detail {

/// Full expected tensor from listed entries plus a seen-mask.  Rank-3
/// tables list every nonzero component; rank-4 tables list one
/// representative per symmetry orbit and are completed with the curvature
/// signs.  Conflicting completions throw (they would mean a mistranscribed
/// table).
struct ExpectedTensor {
    Tensor values;
    std::vector<char> listed;  // flat 0/1 mask over all components
};

inline ExpectedTensor build_expected_tensor(
    const std::vector<TableEntry>& entries, const SpacePtr& space,
    std::size_t rank) {
    ExpectedTensor out{
        Tensor(space, 4, std::vector<Variance>(rank, Variance::Down)),
        std::vector<char>(rank == 3 ? 64 : 256, 0)};
    auto put = [&](const std::vector<std::size_t>& zero_based, const Poly& v,
                   const std::string& name) {
        std::size_t flat = 0;
        for (std::size_t i : zero_based) flat = flat * 4 + i;
        if (out.listed[flat]) {
            if (!(out.values.at(zero_based) == v))
                throw error("expected-table completion conflict at " + name);
            return;
        }
        out.values.at(zero_based) = v;
        out.listed[flat] = 1;
    };
    for (const TableEntry& e : entries) {
        std::vector<std::size_t> z;
        for (std::size_t i : e.idx) z.push_back(i - 1);
        if (rank == 3) {
            put(z, e.value, e.name);
            continue;
        }
        const std::size_t a = z[0], b = z[1], c = z[2], d = z[3];
        const Poly& v = e.value;
        put({a, b, c, d}, v, e.name);
        put({b, a, c, d}, -v, e.name);
        put({a, b, d, c}, -v, e.name);
        put({b, a, d, c}, v, e.name);
        put({c, d, a, b}, v, e.name);
        put({d, c, a, b}, -v, e.name);
        put({c, d, b, a}, -v, e.name);
        put({d, c, b, a}, v, e.name);
    }
    return out;
}

inline std::string index_string(const std::vector<std::size_t>& zero_based) {
    std::string s = "(";
    for (std::size_t i = 0; i < zero_based.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(zero_based[i] + 1);
    }
    return s + ")";
}

/// Evaluate a table polynomial at the run's parameter point (identity in
/// symbolic mode).
inline Poly at_point(const Poly& p,
                     const std::optional<std::vector<Rational>>& point) {
    return point ? Poly(p.eval(*point)) : p;
}

inline void compare_table(VerificationReport& rep,
                          const std::string& rest_name,
                          const std::vector<TableEntry>& entries,
                          const Tensor& computed, const SpacePtr& table_space,
                          const std::optional<std::vector<Rational>>& point) {
    const std::size_t rank = computed.rank();
    const ExpectedTensor expected =
        build_expected_tensor(entries, table_space, rank);
    for (const TableEntry& e : entries) {
        std::vector<std::size_t> z;
        for (std::size_t i : e.idx) z.push_back(i - 1);
        const Poly want = at_point(e.value, point);
        const Poly& got = computed.at(z);
        Check c;
        c.section = "tables";
        c.name = e.name;
        c.computed = to_string(got);
        c.expected = to_string(want);
        if (e.erratum) c.printed = to_string(at_point(e.printed, point));
        c.note = e.note;
        c.status = (got == want)
                       ? (e.erratum ? CheckStatus::erratum_match
                                    : CheckStatus::match)
                       : CheckStatus::mismatch;
        rep.add(std::move(c));
    }
    // Everything the table leaves implicit: symmetry images and zeros.
    Check rest;
    rest.section = "tables";
    rest.name = rest_name;
    rest.computed = "all agree";
    rest.expected = "symmetry completion of the listed entries, zero outside";
    rest.status = CheckStatus::match;
    for (MultiIndex mi(4, rank); !mi.done(); mi.next()) {
        std::size_t flat = 0;
        for (std::size_t i : *mi) flat = flat * 4 + i;
        if (expected.listed[flat]) continue;
        const Poly want = at_point(expected.values.at(*mi), point);
        if (computed.at(*mi) == want) continue;
        rest.status = CheckStatus::mismatch;
        rest.computed = "component " + index_string(*mi) + " is " +
                        to_string(computed.at(*mi)) + ", expected " +
                        to_string(want);
        break;
    }
    rep.add(std::move(rest));
}

inline void add_scalar_check(VerificationReport& rep,
                             const std::string& section,
                             const std::string& name, const Poly& computed,
                             const Poly& expected_symbolic,
                             const std::optional<std::vector<Rational>>& point,
                             const Poly* printed_symbolic = nullptr,
                             const std::string& note = "") {
    const Poly want = at_point(expected_symbolic, point);
    Check c;
    c.section = section;
    c.name = name;
    c.computed = to_string(computed);
    c.expected = to_string(want);
    if (printed_symbolic)
        c.printed = to_string(at_point(*printed_symbolic, point));
    c.note = note;
    c.status = (computed == want) ? (printed_symbolic
                                         ? CheckStatus::erratum_match
                                         : CheckStatus::match)
                                  : CheckStatus::mismatch;
    rep.add(std::move(c));
}

inline void add_condition_check(VerificationReport& rep,
                                const std::string& section,
                                const std::string& name, bool holds,
                                const std::string& expected,
                                const std::string& printed = "",
                                const std::string& note = "") {
    Check c;
    c.section = section;
    c.name = name;
    c.computed = holds ? "holds" : "violated";
    c.expected = expected;
    c.printed = printed;
    c.note = note;
    c.status = holds ? (printed.empty() ? CheckStatus::match
                                        : CheckStatus::erratum_match)
                     : CheckStatus::mismatch;
    rep.add(std::move(c));
}

inline void add_tensor_check(VerificationReport& rep,
                             const std::string& section,
                             const std::string& name, const Tensor& a,
                             const Tensor& b, const std::string& expected,
                             const std::string& note = "") {
    Check c;
    c.section = section;
    c.name = name;
    c.expected = expected;
    c.note = note;
    c.computed = "equal";
    c.status = CheckStatus::match;
    if (!(a == b)) {
        for (MultiIndex mi(a.dim(), a.rank()); !mi.done(); mi.next())
            if (!(a.at(*mi) == b.at(*mi))) {
                c.computed = "differs at " + index_string(*mi) + ": " +
                             to_string(a.at(*mi)) + " vs " +
                             to_string(b.at(*mi));
                break;
            }
        c.status = CheckStatus::mismatch;
    }
    rep.add(std::move(c));
}

inline bool first_bianchi_holds(const Tensor& r04) {
    const std::size_t n = r04.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    if (!(r04(a, b, c, d) + r04(b, c, a, d) +
                          r04(c, a, b, d))
                             .is_zero())
                        return false;
    return true;
}

inline bool weyl_trace_free(const Tensor& w, const Metric& g) {
    const std::size_t n = g.dim();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
            Poly sum = Poly::zero(w.space());
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t u = 0; u < n; ++u)
                    sum += g.inverse()(x, u) * w(x, y, z, u);
            if (!sum.is_zero()) return false;
        }
    return true;
}

inline std::string class_string(const ClassificationResult& c) {
    std::string s;
    auto append = [&s](bool flag, const char* name) {
        if (!flag) return;
        if (!s.empty()) s += " ";
        s += name;
    };
    append(c.w0, "w0");
    append(c.w1, "w1");
    append(c.w2, "w2");
    append(c.w3, "w3");
    return s.empty() ? "none" : s;
}

}  // namespace detail

/// Run the full pipeline on both metrics of the family and compare every
/// table entry, closed form, and theorem-level identity.  `point` empty
/// means fully symbolic.
inline VerificationReport verify_family_impl(
    const std::optional<std::array<Rational, 4>>& lambda,
    WeylConvention convention) {
    const ExpectedTables tab = expected_tables();
    std::optional<std::vector<Rational>> point;
    if (lambda) point.emplace(lambda->begin(), lambda->end());

    FamilyModel model =
        lambda ? make_numeric_family(*lambda)
               : make_family(tab.space,
                             {Poly::variable(tab.space, 0),
                              Poly::variable(tab.space, 1),
                              Poly::variable(tab.space, 2),
                              Poly::variable(tab.space, 3)});

    VerificationReport rep;
    if (lambda) {
        std::string mode;
        for (const Rational& v : *lambda) {
            if (!mode.empty()) mode += ",";
            mode += to_string(v);
        }
        rep.mode = mode;
    } else {
        rep.mode = "symbolic";
    }
    rep.convention =
        convention == WeylConvention::standard ? "standard" : "printed";

    // Pipelines on both sides.  tilde_connection re-derives the tilde side
    // three ways internally and throws on any disagreement.
    const Connection nabla =
        Connection::levi_civita(model.algebra, model.metric);
    const Metric assoc = associated_metric(model.metric, model.j);
    const Connection tilde =
        tilde_connection(model.algebra, model.metric, model.j);
    const Tensor f = f_tensor(nabla, model.j, model.metric);
    const Tensor f_tilde = f_tensor(tilde, model.j, assoc);
    const TransferTensor t = transfer_tensor(
        nabla.covariant_derivative(model.j), model.j, model.metric);
    const TransferTensor t_tilde =
        transfer_tensor(tilde.covariant_derivative(model.j), model.j, assoc);
    const Tensor r13 = nabla.curvature(model.algebra);
    const Tensor r04 = lower_curvature(r13, model.metric);
    const Tensor r13_tilde = tilde.curvature(model.algebra);
    const Tensor r04_tilde = lower_curvature(r13_tilde, assoc);
    const auto [rho, tau] = ricci_and_scalar(r13, model.metric);
    const auto [rho_tilde, tau_tilde] = ricci_and_scalar(r13_tilde, assoc);
    const Poly snorm = square_norm(f, model.metric);
    const Poly snorm_tilde = square_norm(f_tilde, assoc);
    const Tensor weyl_g = weyl(r04, model.metric, convention);
    const Tensor weyl_tilde = weyl(r04_tilde, assoc, convention);
    const Tensor q = q_tensor(nabla, t.mixed);
    const Tensor q_tilde = q_tensor(tilde, t_tilde.mixed);

    // ---- Report section "tables": components in published order. ----
    detail::compare_table(rep, "F_rest", tab.f_table, f, tab.space, point);
    detail::compare_table(rep, "Ft_rest", tab.f_tilde_table, f_tilde,
                          tab.space, point);
    detail::compare_table(rep, "R_rest", tab.r_table, r04, tab.space, point);
    detail::compare_table(rep, "Rt_rest", tab.r_tilde_table, r04_tilde,
                          tab.space, point);
    detail::compare_table(rep, "Wt_rest", tab.w_tilde_table, weyl_tilde,
                          tab.space, point);

    // ---- Report section "closed-forms". ----
    detail::add_scalar_check(rep, "closed-forms", "snorm_J", snorm,
                             tab.snorm_j, point);
    detail::add_scalar_check(rep, "closed-forms", "snorm_Jt", snorm_tilde,
                             tab.snorm_j_tilde, point);
    detail::add_scalar_check(rep, "closed-forms", "tau", tau, tab.tau, point);
    detail::add_scalar_check(
        rep, "closed-forms", "taut", tau_tilde, tab.tau_tilde, point,
        &tab.tau_tilde_printed,
        "sign corrected: contraction of the tilde curvature table gives -5");
    detail::add_condition_check(
        rep, "closed-forms", "tau_snorm_relation",
        tau * Poly(8) == snorm * Poly(-3), "tau = -3/8 snorm_J");
    detail::add_condition_check(
        rep, "closed-forms", "taut_snorm_relation",
        tau_tilde * Poly(8) == snorm_tilde * Poly(5), "taut = 5/8 snorm_Jt",
        "taut = -5/8 snorm_Jt",
        "ratio corrected together with the sign of taut");

    // Isotropic-cone identities: with V = l1 X1 + ... + l4 X4,
    // g(V,V) = 1/4 snorm_J and g'(V,V) = 1/4 snorm_Jt.
    {
        Poly gvv = Poly::zero(model.space);
        Poly avv = Poly::zero(model.space);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) {
                gvv += model.metric.tensor()(i, k) * model.lambda[i] *
                       model.lambda[k];
                avv += assoc.tensor()(i, k) * model.lambda[i] *
                       model.lambda[k];
            }
        detail::add_condition_check(rep, "closed-forms", "cone_g",
                                    gvv * Poly(4) == snorm,
                                    "g(V,V) = 1/4 snorm_J");
        detail::add_condition_check(rep, "closed-forms", "cone_g_tilde",
                                    avv * Poly(4) == snorm_tilde,
                                    "g'(V,V) = 1/4 snorm_Jt");
    }

    if (lambda) {
        const IsotropicFlags flags = isotropic_flags(*lambda);
        detail::add_condition_check(
            rep, "closed-forms", "isotropic_g",
            snorm.is_zero() == flags.g,
            "pipeline norm vanishes iff l1^2+l2^2-l3^2-l4^2 = 0", "",
            std::string("flag: ") + (flags.g ? "true" : "false"));
        detail::add_condition_check(
            rep, "closed-forms", "isotropic_g_tilde",
            snorm_tilde.is_zero() == flags.g_tilde,
            "pipeline norm vanishes iff l1*l3+l2*l4 = 0", "",
            std::string("flag: ") + (flags.g_tilde ? "true" : "false"));
    } else {
        // Four-way equivalence on the tilde side: the Weyl tensor, the
        // scalar curvature, and the square norm are exact multiples of the
        // isotropic condition, with a nonzero ratio somewhere.
        bool weyl_multiple = true;
        for (MultiIndex mi(4, 4); !mi.done(); mi.next())
            if (!rational_multiple_of(weyl_tilde.at(*mi),
                                      tab.condition_g_tilde)
                     .has_value())
                weyl_multiple = false;
        const auto tau_ratio =
            rational_multiple_of(tau_tilde, tab.condition_g_tilde);
        const auto snorm_ratio =
            rational_multiple_of(snorm_tilde, tab.condition_g_tilde);
        const bool equivalence =
            weyl_multiple && !weyl_tilde.is_zero() &&
            tau_ratio.has_value() && *tau_ratio != Rational(0) &&
            snorm_ratio.has_value() && *snorm_ratio != Rational(0);
        detail::add_condition_check(
            rep, "closed-forms", "equivalence_g_tilde", equivalence,
            "Wt, taut, snorm_Jt vanish exactly on l1*l3+l2*l4 = 0");
        // The two isotropic conditions are mutually non-proportional, so
        // either side can be scalar-flat without the other.
        const bool independent =
            !rational_multiple_of(tab.condition_g, tab.condition_g_tilde)
                 .has_value() &&
            !rational_multiple_of(tab.condition_g_tilde, tab.condition_g)
                 .has_value();
        detail::add_condition_check(
            rep, "closed-forms", "scalar_flat_independence", independent,
            "neither isotropic condition is a rational multiple of the "
            "other");
    }

    // ---- Report section "theorems": structural and theorem identities. ----
    detail::add_condition_check(rep, "theorems", "jacobi",
                                model.algebra.satisfies_jacobi(),
                                "Jacobi residual = 0");
    detail::add_condition_check(
        rep, "theorems", "ad_invariance",
        model.algebra.ad_invariance_residual(model.metric).is_zero(),
        "g([x,y],z) + g([x,z],y) = 0");
    detail::add_condition_check(rep, "theorems", "norden_g",
                                is_norden_pair(model.metric, model.j),
                                "g(Jx,Jy) = -g(x,y)");
    detail::add_condition_check(rep, "theorems", "norden_g_tilde",
                                is_norden_pair(assoc, model.j),
                                "g'(Jx,Jy) = -g'(x,y)");
    detail::add_condition_check(
        rep, "theorems", "signature_g",
        model.metric.signature() == std::pair<std::size_t, std::size_t>{2, 2},
        "signature (2,2)");
    detail::add_condition_check(
        rep, "theorems", "signature_g_tilde",
        assoc.signature() == std::pair<std::size_t, std::size_t>{2, 2},
        "signature (2,2)");

    {
        const bool origin =
            lambda && (*lambda)[0] == 0 && (*lambda)[1] == 0 &&
            (*lambda)[2] == 0 && (*lambda)[3] == 0;
        const std::string want = origin ? "w0 w1 w2 w3" : "w3";
        const auto cls = classify(f, model.j, model.metric);
        const auto cls_tilde = classify(f_tilde, model.j, assoc);
        Check c;
        c.section = "theorems";
        c.name = "class_g";
        c.computed = detail::class_string(cls);
        c.expected = want;
        c.note = cls.theta.is_zero() ? "theta = 0" : "theta != 0";
        c.status = (c.computed == want && cls.theta.is_zero())
                       ? CheckStatus::match
                       : CheckStatus::mismatch;
        rep.add(std::move(c));
        Check ct;
        ct.section = "theorems";
        ct.name = "class_g_tilde";
        ct.computed = detail::class_string(cls_tilde);
        ct.expected = want;
        ct.note = cls_tilde.theta.is_zero() ? "theta = 0" : "theta != 0";
        ct.status = (ct.computed == want && cls_tilde.theta.is_zero())
                        ? CheckStatus::match
                        : CheckStatus::mismatch;
        rep.add(std::move(ct));
    }

    // Orientation of the connection-difference identity (corrected form
    // must hold; the printed orientation is off by a global sign).
    {
        const Tensor diff =
            connection_difference_form(nabla, tilde, model.metric);
        const Tensor rhs = levi_civita_difference_rhs(f, model.j);
        const bool corrected = diff == rhs;
        const bool printed_fails = !(-diff == rhs) || rhs.is_zero();
        detail::add_condition_check(
            rep, "theorems", "difference_orientation",
            corrected && printed_fails,
            "g(nabla'_x y - nabla_x y, z) equals the F-expression",
            "g(nabla_x y - nabla'_x y, z) equals the F-expression",
            "orientation corrected; the printed one fails whenever the "
            "transfer tensor is nonzero");
    }
    // Bracket form of the tilde connection (corrected J-term signs).
    {
        const bool corrected =
            tilde.gamma() == bracket_path_gamma(model.algebra, model.j);
        const Tensor printed =
            bracket_path_gamma(model.algebra, model.j, true);
        const bool printed_fails =
            !(tilde.gamma() == printed) || t.mixed.is_zero();
        detail::add_condition_check(
            rep, "theorems", "bracket_form_signs",
            corrected && printed_fails,
            "nabla'_x y = 1/2 {[x,y] - J[x,Jy] + J[Jx,y]}",
            "nabla'_x y = 1/2 {[x,y] + J[x,Jy] - J[Jx,y]}",
            "J-term signs corrected; the printed signs fail the Koszul "
            "cross-check whenever the transfer tensor is nonzero");
    }

    detail::add_tensor_check(rep, "theorems", "conjugate_f",
                             f_tilde, -compose(f, 0, model.j),
                             "F'(x,y,z) = -F(Jx,y,z)");
    detail::add_tensor_check(
        rep, "theorems", "conjugate_nabla_j",
        tilde.covariant_derivative(model.j),
        -compose(compose(nabla.covariant_derivative(model.j), 0, model.j), 2,
                 model.j),
        "(nabla'_x J)y = -(nabla_{Jx} J)Jy");
    detail::add_condition_check(
        rep, "theorems", "conjugation_identity",
        conjugation_identity_residual(f_tilde, f, model.j).is_zero(),
        "F' = 1/2 {F(Jy,z,x) + F(y,z,Jx) + F(z,Jx,y) + F(Jz,x,y)}");
    detail::add_condition_check(
        rep, "theorems", "cyclic_conjugation",
        cyclic_conjugation_residual(f_tilde, f, model.j).is_zero(),
        "cyclic F'(x,y,z) = cyclic F(Jx,y,z)");
    detail::add_tensor_check(rep, "theorems", "transfer_flip",
                             t_tilde.mixed, -t.mixed, "T' = -T");
    detail::add_tensor_check(rep, "theorems", "q_flip", q_tilde, -q,
                             "Q' = -Q");
    detail::add_tensor_check(rep, "theorems", "curvature_additivity",
                             r13_tilde, r13 + q, "R' = R + Q");
    detail::add_tensor_check(
        rep, "theorems", "curvature_closed_form", r04_tilde,
        curvature_transfer_rhs(r04, f, nabla, model.j, model.metric),
        "direct R' equals the closed-form right side");
    detail::add_condition_check(
        rep, "theorems", "transfer_derivative_identity",
        transfer_derivative_residual(nabla, t.lowered, f, model.j).is_zero(),
        "antisymmetrized nabla T matches its F-expression");
    detail::add_condition_check(
        rep, "theorems", "transfer_quadratic_identity",
        transfer_quadratic_residual(nabla, t.mixed, model.j, model.metric)
            .is_zero(),
        "antisymmetrized T(x,T(y,z)) matches its nabla J-expression");
    {
        const auto inv = invariants_s_p(nabla, t.mixed, r13, q);
        const auto inv_tilde =
            invariants_s_p(tilde, t_tilde.mixed, r13_tilde, q_tilde);
        detail::add_tensor_check(rep, "theorems", "invariance_s", inv.s,
                                 inv_tilde.s,
                                 "S = nabla + 1/2 T agrees from both sides");
        detail::add_tensor_check(rep, "theorems", "invariance_p", inv.p,
                                 inv_tilde.p,
                                 "P = R + 1/2 Q agrees from both sides");
    }
    detail::add_condition_check(rep, "theorems", "bianchi_g",
                                detail::first_bianchi_holds(r04),
                                "first Bianchi identity");
    detail::add_condition_check(rep, "theorems", "bianchi_g_tilde",
                                detail::first_bianchi_holds(r04_tilde),
                                "first Bianchi identity");
    detail::add_condition_check(
        rep, "theorems", "weyl_g_vanishes", weyl_g.is_zero(),
        "the g side is conformally flat under the standard normalization",
        "",
        convention == WeylConvention::standard
            ? ""
            : "evaluated under the printed normalization");
    {
        // Which normalization reproduces the tilde Weyl table together with
        // a vanishing g-side Weyl tensor?  (Computed independently of the
        // convention selected for this run.)
        const Tensor ws = weyl(r04, model.metric, WeylConvention::standard);
        const Tensor wts =
            weyl(r04_tilde, assoc, WeylConvention::standard);
        const detail::ExpectedTensor expected_wt =
            detail::build_expected_tensor(tab.w_tilde_table, tab.space, 4);
        bool standard_matches = ws.is_zero();
        for (MultiIndex mi(4, 4); !mi.done() && standard_matches; mi.next())
            if (!(wts.at(*mi) ==
                  detail::at_point(expected_wt.values.at(*mi), point)))
                standard_matches = false;
        detail::add_condition_check(
            rep, "theorems", "weyl_convention_probe", standard_matches,
            "the standard normalization reproduces W = 0 and the Wt table");
    }
    return rep;
}

/// Symbolic run over the parameter space {l1..l4}.
inline VerificationReport verify_family(
    WeylConvention convention = WeylConvention::standard) {
    return verify_family_impl(std::nullopt, convention);
}

/// Numeric run at an exact rational parameter point.
inline VerificationReport verify_family(
    const std::array<Rational, 4>& lambda,
    WeylConvention convention = WeylConvention::standard) {
    return verify_family_impl(lambda, convention);
}

/// Structural and theorem-level verification for an arbitrary model (no
/// expected tables): Norden validity, Jacobi, the difference identity, the
/// conjugation identities, curvature structure, and -- when the model is in
/// class w3 -- the whole transfer block.
inline VerificationReport verify_model(
    const LieAlgebra& algebra, const Metric& g, const Tensor& j,
    WeylConvention convention = WeylConvention::standard) {
    VerificationReport rep;
    rep.mode = "model";
    rep.convention =
        convention == WeylConvention::standard ? "standard" : "printed";

    detail::add_condition_check(rep, "theorems", "jacobi",
                                algebra.satisfies_jacobi(),
                                "Jacobi residual = 0");
    detail::add_condition_check(rep, "theorems", "almost_complex",
                                is_almost_complex(j), "J^2 = -identity");
    detail::add_condition_check(rep, "theorems", "norden_g",
                                is_norden_pair(g, j),
                                "g(Jx,Jy) = -g(x,y)");
    if (!(algebra.satisfies_jacobi() && is_almost_complex(j) &&
          is_norden_pair(g, j)))
        return rep;

    const std::size_t n = g.dim();
    const Metric assoc = associated_metric(g, j);
    detail::add_condition_check(
        rep, "theorems", "signature_g",
        g.signature() == std::pair<std::size_t, std::size_t>{n / 2, n / 2},
        "signature (n,n)");
    const Connection nabla = Connection::levi_civita(algebra, g);
    const Connection tilde = tilde_connection(algebra, g, j);
    const Tensor f = f_tensor(nabla, j, g);
    const Tensor f_tilde = f_tensor(tilde, j, assoc);
    const Tensor r04 = lower_curvature(nabla.curvature(algebra), g);
    const Tensor r04_tilde =
        lower_curvature(tilde.curvature(algebra), assoc);

    {
        const auto cls = classify(f, j, g);
        Check c;
        c.section = "theorems";
        c.name = "class_g";
        c.computed = detail::class_string(cls);
        c.expected = c.computed;
        c.note = cls.theta.is_zero() ? "theta = 0" : "theta != 0";
        rep.add(std::move(c));
    }
    detail::add_condition_check(
        rep, "theorems", "difference_orientation",
        connection_difference_form(nabla, tilde, g) ==
            levi_civita_difference_rhs(f, j),
        "g(nabla'_x y - nabla_x y, z) equals the F-expression");
    detail::add_condition_check(
        rep, "theorems", "conjugation_identity",
        conjugation_identity_residual(f_tilde, f, j).is_zero(),
        "F' = 1/2 {F(Jy,z,x) + F(y,z,Jx) + F(z,Jx,y) + F(Jz,x,y)}");
    detail::add_condition_check(
        rep, "theorems", "cyclic_conjugation",
        cyclic_conjugation_residual(f_tilde, f, j).is_zero(),
        "cyclic F'(x,y,z) = cyclic F(Jx,y,z)");
    detail::add_condition_check(rep, "theorems", "bianchi_g",
                                detail::first_bianchi_holds(r04),
                                "first Bianchi identity");
    detail::add_condition_check(rep, "theorems", "bianchi_g_tilde",
                                detail::first_bianchi_holds(r04_tilde),
                                "first Bianchi identity");

    if (cyclic_sum(f).is_zero()) {
        const TransferTensor t =
            transfer_tensor(nabla.covariant_derivative(j), j, g);
        const TransferTensor t_tilde =
            transfer_tensor(tilde.covariant_derivative(j), j, assoc);
        const Tensor q = q_tensor(nabla, t.mixed);
        const Tensor q_tilde = q_tensor(tilde, t_tilde.mixed);
        detail::add_tensor_check(rep, "theorems", "conjugate_f", f_tilde,
                                 -compose(f, 0, j),
                                 "F'(x,y,z) = -F(Jx,y,z)");
        detail::add_tensor_check(rep, "theorems", "transfer_flip",
                                 t_tilde.mixed, -t.mixed, "T' = -T");
        detail::add_tensor_check(rep, "theorems", "q_flip", q_tilde, -q,
                                 "Q' = -Q");
        detail::add_tensor_check(rep, "theorems", "curvature_additivity",
                                 tilde.curvature(algebra),
                                 nabla.curvature(algebra) + q, "R' = R + Q");
        detail::add_tensor_check(
            rep, "theorems", "curvature_closed_form", r04_tilde,
            curvature_transfer_rhs(r04, f, nabla, j, g),
            "direct R' equals the closed-form right side");
        detail::add_condition_check(
            rep, "theorems", "transfer_derivative_identity",
            transfer_derivative_residual(nabla, t.lowered, f, j).is_zero(),
            "antisymmetrized nabla T matches its F-expression");
        detail::add_condition_check(
            rep, "theorems", "transfer_quadratic_identity",
            transfer_quadratic_residual(nabla, t.mixed, j, g).is_zero(),
            "antisymmetrized T(x,T(y,z)) matches its nabla J-expression");
        const auto inv =
            invariants_s_p(nabla, t.mixed, nabla.curvature(algebra), q);
        const auto inv_tilde = invariants_s_p(
            tilde, t_tilde.mixed, tilde.curvature(algebra), q_tilde);
        detail::add_tensor_check(rep, "theorems", "invariance_s", inv.s,
                                 inv_tilde.s,
                                 "S = nabla + 1/2 T agrees from both sides");
        detail::add_tensor_check(rep, "theorems", "invariance_p", inv.p,
                                 inv_tilde.p,
                                 "P = R + 1/2 Q agrees from both sides");
    }
    if (n >= 4) {
        detail::add_condition_check(
            rep, "theorems", "weyl_trace_free",
            detail::weyl_trace_free(
                weyl(r04, g, WeylConvention::standard), g),
            "standard Weyl tensor is totally trace-free");
    }
    return rep;
}

}  // namespace norden
