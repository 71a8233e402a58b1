// Command-line front end.
//
//   norden <subcommand> [--lambda a,b,c,d | --symbolic | --model FILE]
//                       [--convention standard|printed]
//                       [--format text|json] [--output FILE]
//
// Subcommands: verify, classify, curvature, norms, invariants, tables.
// Exit codes: 0 = all checks match (erratum-matches count as pass, and are
// flagged); 1 = at least one unexplained mismatch; 2 = usage or input
// error.  Output is deterministic: identical invocations produce
// byte-identical documents.

#include <norden/connection.hpp>
#include <norden/curvature.hpp>
#include <norden/family.hpp>
#include <norden/model_io.hpp>
#include <norden/report_render.hpp>
#include <norden/structure_tensor.hpp>
#include <norden/transformation.hpp>
#include <norden/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace norden;

struct Options {
    std::string lambda;
    bool symbolic = false;
    std::string model_path;
    std::string convention = "standard";
    std::string format = "text";
    std::string output;
};

/// Everything a subcommand needs: the model data, a mode label for the
/// output header, and whether the input is the built-in family (which has
/// expected tables and printed-value annotations).
struct LoadedModel {
    SpacePtr space;
    LieAlgebra algebra;
    Metric metric;
    Tensor j;
    std::string mode;
    bool family = true;
    std::optional<std::array<Rational, 4>> point;  // set in --lambda mode
};

std::array<Rational, 4> parse_lambda(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    if (parts.size() != 4)
        throw parse_error("--lambda expects exactly 4 comma-separated "
                          "rationals, got " +
                          std::to_string(parts.size()));
    std::array<Rational, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = parse_rational(parts[k]);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good())
        throw parse_error("cannot open model file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

LoadedModel load_model(const Options& opt) {
    if (!opt.model_path.empty()) {
        ParsedModel parsed = parse_model(read_file(opt.model_path));
        return LoadedModel{parsed.space,
                           std::move(parsed.algebra),
                           std::move(parsed.metric),
                           std::move(parsed.j),
                           "model",
                           false,
                           std::nullopt};
    }
    if (!opt.lambda.empty()) {
        const std::array<Rational, 4> point = parse_lambda(opt.lambda);
        FamilyModel m = make_numeric_family(point);
        std::string mode;
        for (const Rational& v : point) {
            if (!mode.empty()) mode += ",";
            mode += to_string(v);
        }
        return LoadedModel{m.space,
                           std::move(m.algebra),
                           std::move(m.metric),
                           std::move(m.j),
                           std::move(mode),
                           true,
                           point};
    }
    FamilyModel m = make_symbolic_family();
    return LoadedModel{m.space,          std::move(m.algebra),
                       std::move(m.metric), std::move(m.j),
                       "symbolic",       true,
                       std::nullopt};
}

WeylConvention convention_of(const Options& opt) {
    return opt.convention == "printed" ? WeylConvention::printed
                                       : WeylConvention::standard;
}

int emit(const Options& opt, const std::string& document) {
    if (opt.output.empty()) {
        std::cout << document;
        return 0;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out.good()) {
        std::cerr << "error: cannot open output file \"" << opt.output
                  << "\"\n";
        return 2;
    }
    out << document;
    return 0;
}

std::string index_name(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i : idx) s += std::to_string(i + 1);
    return s;
}

/// Nonzero canonical representatives of a curvature-type tensor: a<b, c<d,
/// (a,b) <= (c,d); the symmetry orbit determines the rest.
std::vector<std::pair<std::string, std::string>> curvature_lines(
    const Tensor& r04, const std::string& prefix) {
    std::vector<std::pair<std::string, std::string>> out;
    const std::size_t n = r04.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = a; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    if (std::make_pair(c, d) < std::make_pair(a, b))
                        continue;
                    if (r04(a, b, c, d).is_zero()) continue;
                    out.push_back({prefix + "_" + index_name({a, b, c, d}),
                                   to_string(r04(a, b, c, d))});
                }
    return out;
}

std::vector<std::pair<std::string, std::string>> symmetric_lines(
    const Tensor& t2, const std::string& prefix) {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < t2.dim(); ++i)
        for (std::size_t j = i; j < t2.dim(); ++j)
            if (!t2(i, j).is_zero())
                out.push_back({prefix + "_" + index_name({i, j}),
                               to_string(t2(i, j))});
    return out;
}

std::string class_line(const ClassificationResult& c) {
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

int run_verify(const Options& opt) {
    VerificationReport rep;
    if (!opt.model_path.empty()) {
        const ParsedModel parsed = parse_model(read_file(opt.model_path));
        rep = verify_model(parsed.algebra, parsed.metric, parsed.j,
                           convention_of(opt));
    } else if (!opt.lambda.empty()) {
        rep = verify_family(parse_lambda(opt.lambda), convention_of(opt));
    } else {
        rep = verify_family(convention_of(opt));
    }
    const std::string document = render_report(
        rep, opt.format == "json" ? ReportFormat::json : ReportFormat::text);
    const int emitted = emit(opt, document);
    if (emitted != 0) return emitted;
    return rep.ok() ? 0 : 1;
}

int run_classify(const Options& opt) {
    const LoadedModel m = load_model(opt);
    const Connection nabla = Connection::levi_civita(m.algebra, m.metric);
    const Metric assoc = associated_metric(m.metric, m.j);
    const Connection tilde = Connection::levi_civita(m.algebra, assoc);
    const Tensor f = f_tensor(nabla, m.j, m.metric);
    const Tensor f_tilde = f_tensor(tilde, m.j, assoc);
    const ClassificationResult cls = classify(f, m.j, m.metric);
    const ClassificationResult cls_tilde = classify(f_tilde, m.j, assoc);

    std::string document;
    if (opt.format == "json") {
        nlohmann::json doc;
        doc["mode"] = m.mode;
        doc["g"] = {{"classes", class_line(cls)},
                    {"theta_zero", cls.theta.is_zero()},
                    {"theta", tensor_to_json(cls.theta)}};
        doc["g_tilde"] = {{"classes", class_line(cls_tilde)},
                          {"theta_zero", cls_tilde.theta.is_zero()},
                          {"theta", tensor_to_json(cls_tilde.theta)}};
        document = doc.dump(2) + "\n";
    } else {
        document = "mode: " + m.mode + "\n";
        document += "g classes: " + class_line(cls) + "\n";
        document += "g theta zero: " +
                    std::string(cls.theta.is_zero() ? "true" : "false") +
                    "\n";
        document += "g~ classes: " + class_line(cls_tilde) + "\n";
        document += "g~ theta zero: " +
                    std::string(cls_tilde.theta.is_zero() ? "true" : "false") +
                    "\n";
    }
    return emit(opt, document);
}

int run_curvature(const Options& opt) {
    const LoadedModel m = load_model(opt);
    const Connection nabla = Connection::levi_civita(m.algebra, m.metric);
    const Metric assoc = associated_metric(m.metric, m.j);
    const Connection tilde = Connection::levi_civita(m.algebra, assoc);
    const Tensor r04 =
        lower_curvature(nabla.curvature(m.algebra), m.metric);
    const Tensor r04_tilde =
        lower_curvature(tilde.curvature(m.algebra), assoc);
    const auto [rho, tau] =
        ricci_and_scalar(nabla.curvature(m.algebra), m.metric);
    const auto [rho_tilde, tau_tilde] =
        ricci_and_scalar(tilde.curvature(m.algebra), assoc);

    std::string document;
    if (opt.format == "json") {
        nlohmann::json doc;
        doc["mode"] = m.mode;
        doc["g"] = {{"r", tensor_to_json(r04)},
                    {"ricci", tensor_to_json(rho)},
                    {"scalar", to_string(tau)}};
        doc["g_tilde"] = {{"r", tensor_to_json(r04_tilde)},
                          {"ricci", tensor_to_json(rho_tilde)},
                          {"scalar", to_string(tau_tilde)}};
        document = doc.dump(2) + "\n";
    } else {
        document = "mode: " + m.mode + "\n\n[g curvature]\n";
        for (const auto& [name, value] : curvature_lines(r04, "R"))
            document += "  " + name + " = " + value + "\n";
        for (const auto& [name, value] : symmetric_lines(rho, "rho"))
            document += "  " + name + " = " + value + "\n";
        document += "  tau = " + to_string(tau) + "\n";
        document += "\n[g~ curvature]\n";
        for (const auto& [name, value] : curvature_lines(r04_tilde, "Rt"))
            document += "  " + name + " = " + value + "\n";
        for (const auto& [name, value] : symmetric_lines(rho_tilde, "rhot"))
            document += "  " + name + " = " + value + "\n";
        document += "  taut = " + to_string(tau_tilde) + "\n";
    }
    return emit(opt, document);
}

int run_norms(const Options& opt) {
    const LoadedModel m = load_model(opt);
    const Connection nabla = Connection::levi_civita(m.algebra, m.metric);
    const Metric assoc = associated_metric(m.metric, m.j);
    const Connection tilde = Connection::levi_civita(m.algebra, assoc);
    const Tensor f = f_tensor(nabla, m.j, m.metric);
    const Tensor f_tilde = f_tensor(tilde, m.j, assoc);
    const Poly snorm = square_norm(f, m.metric);
    const Poly snorm_tilde = square_norm(f_tilde, assoc);
    const Poly tau =
        ricci_and_scalar(nabla.curvature(m.algebra), m.metric).scalar;
    const Poly tau_tilde =
        ricci_and_scalar(tilde.curvature(m.algebra), assoc).scalar;

    // For the built-in family the printed closed form for taut has the
    // opposite sign; surface both readings.
    std::optional<std::string> taut_printed;
    if (m.family) {
        const ExpectedTables tab = expected_tables();
        Poly printed = tab.tau_tilde_printed;
        if (m.point) {
            const std::vector<Rational> values(m.point->begin(),
                                               m.point->end());
            printed = Poly(printed.eval(values));
        }
        taut_printed = to_string(printed);
    }

    std::string document;
    if (opt.format == "json") {
        nlohmann::json doc;
        doc["mode"] = m.mode;
        doc["snorm_J"] = to_string(snorm);
        doc["snorm_Jt"] = to_string(snorm_tilde);
        doc["tau"] = to_string(tau);
        doc["taut"] = to_string(tau_tilde);
        if (taut_printed) doc["taut_printed"] = *taut_printed;
        document = doc.dump(2) + "\n";
    } else {
        document = "mode: " + m.mode + "\n";
        document += "snorm_J: " + to_string(snorm) + "\n";
        document += "snorm_Jt: " + to_string(snorm_tilde) + "\n";
        document += "tau: " + to_string(tau) + "\n";
        document += "taut: " + to_string(tau_tilde);
        if (taut_printed)
            document +=
                "  (a closed form that circulates in print gives " +
                *taut_printed + ")";
        document += "\n";
    }
    return emit(opt, document);
}

int run_invariants(const Options& opt) {
    const LoadedModel m = load_model(opt);
    const Connection nabla = Connection::levi_civita(m.algebra, m.metric);
    const Metric assoc = associated_metric(m.metric, m.j);
    const Connection tilde = tilde_connection(m.algebra, m.metric, m.j);
    const Tensor f = f_tensor(nabla, m.j, m.metric);
    const bool w3 = cyclic_sum(f).is_zero();
    const TransferTensor t =
        transfer_tensor(nabla.covariant_derivative(m.j), m.j, m.metric);
    const TransferTensor t_tilde =
        transfer_tensor(tilde.covariant_derivative(m.j), m.j, assoc);
    const Tensor q = q_tensor(nabla, t.mixed);
    const Tensor q_tilde = q_tensor(tilde, t_tilde.mixed);
    const ConnectionInvariants inv =
        invariants_s_p(nabla, t.mixed, nabla.curvature(m.algebra), q);
    const ConnectionInvariants inv_tilde = invariants_s_p(
        tilde, t_tilde.mixed, tilde.curvature(m.algebra), q_tilde);
    const bool s_equal = inv.s == inv_tilde.s;
    const bool p_equal = inv.p == inv_tilde.p;

    std::string document;
    if (opt.format == "json") {
        nlohmann::json doc;
        doc["mode"] = m.mode;
        doc["class_w3"] = w3;
        doc["s_invariant"] = s_equal;
        doc["p_invariant"] = p_equal;
        doc["s"] = tensor_to_json(inv.s);
        doc["p"] = tensor_to_json(inv.p);
        doc["transfer"] = tensor_to_json(t.mixed);
        doc["q"] = tensor_to_json(q);
        document = doc.dump(2) + "\n";
    } else {
        document = "mode: " + m.mode + "\n";
        document += "class w3: " + std::string(w3 ? "true" : "false") + "\n";
        document += "S invariant: " +
                    std::string(s_equal ? "match" : "mismatch") + "\n";
        document += "P invariant: " +
                    std::string(p_equal ? "match" : "mismatch") + "\n";
        if (!w3)
            document +=
                "note: invariance is only asserted for class w3 models\n";
    }
    const int emitted = emit(opt, document);
    if (emitted != 0) return emitted;
    // The invariance theorems are claims only in class w3.
    if (w3 && (!s_equal || !p_equal)) return 1;
    return 0;
}

nlohmann::json table_entry_json(
    const TableEntry& e, const std::optional<std::vector<Rational>>& point) {
    auto value_string = [&](const Poly& p) {
        return point ? to_string(Poly(p.eval(*point))) : to_string(p);
    };
    nlohmann::json out;
    out["name"] = e.name;
    out["idx"] = e.idx;
    out["value"] = value_string(e.value);
    if (e.erratum) {
        out["printed"] = value_string(e.printed);
        out["corrected"] = value_string(e.value);
    }
    if (!e.note.empty()) out["note"] = e.note;
    return out;
}

int run_tables(const Options& opt) {
    const ExpectedTables tab = expected_tables();
    std::optional<std::vector<Rational>> point;
    std::string mode = "symbolic";
    if (!opt.lambda.empty()) {
        const std::array<Rational, 4> lambda = parse_lambda(opt.lambda);
        point.emplace(lambda.begin(), lambda.end());
        mode.clear();
        for (const Rational& v : lambda) {
            if (!mode.empty()) mode += ",";
            mode += to_string(v);
        }
    }
    auto value_string = [&](const Poly& p) {
        return point ? to_string(Poly(p.eval(*point))) : to_string(p);
    };

    std::string document;
    if (opt.format == "json") {
        nlohmann::json doc;
        doc["mode"] = mode;
        auto table_json = [&](const std::vector<TableEntry>& entries) {
            nlohmann::json out = nlohmann::json::array();
            for (const TableEntry& e : entries)
                out.push_back(table_entry_json(e, point));
            return out;
        };
        doc["f_table"] = table_json(tab.f_table);
        doc["f_tilde_table"] = table_json(tab.f_tilde_table);
        doc["r_table"] = table_json(tab.r_table);
        doc["r_tilde_table"] = table_json(tab.r_tilde_table);
        doc["w_tilde_table"] = table_json(tab.w_tilde_table);
        doc["closed_forms"] = {
            {"snorm_J", value_string(tab.snorm_j)},
            {"snorm_Jt", value_string(tab.snorm_j_tilde)},
            {"tau", value_string(tab.tau)},
            {"taut",
             {{"corrected", value_string(tab.tau_tilde)},
              {"printed", value_string(tab.tau_tilde_printed)}}}};
        document = doc.dump(2) + "\n";
    } else {
        document = "mode: " + mode + "\n";
        auto table_text = [&](const char* heading,
                              const std::vector<TableEntry>& entries) {
            document += "\n[" + std::string(heading) + "]\n";
            for (const TableEntry& e : entries) {
                document += "  " + e.name + " = " + value_string(e.value);
                if (e.erratum)
                    document +=
                        "  (printed: " + value_string(e.printed) + ")";
                document += "\n";
            }
        };
        table_text("F table", tab.f_table);
        table_text("F~ table", tab.f_tilde_table);
        table_text("R table", tab.r_table);
        table_text("R~ table", tab.r_tilde_table);
        table_text("W~ table (standard normalization)", tab.w_tilde_table);
        document += "\n[closed forms]\n";
        document += "  snorm_J = " + value_string(tab.snorm_j) + "\n";
        document += "  snorm_Jt = " + value_string(tab.snorm_j_tilde) + "\n";
        document += "  tau = " + value_string(tab.tau) + "\n";
        document += "  taut = " + value_string(tab.tau_tilde) +
                    "  (printed: " + value_string(tab.tau_tilde_printed) +
                    ")\n";
    }
    return emit(opt, document);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact verification of almost complex models with Norden metric: "
        "structure tensors, classification, curvature, and the "
        "twin-connection transformation, over exact rational arithmetic."};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* cmd, bool with_model,
                             bool with_convention) {
        CLI::Option* lambda =
            cmd->add_option("--lambda", opt.lambda,
                            "evaluate at an exact rational point a,b,c,d");
        CLI::Option* symbolic = cmd->add_flag(
            "--symbolic", opt.symbolic,
            "keep the four parameters symbolic (default)");
        lambda->excludes(symbolic);
        if (with_model) {
            CLI::Option* model = cmd->add_option(
                "--model", opt.model_path,
                "read a model document instead of the built-in family");
            model->excludes(lambda);
            model->excludes(symbolic);
        }
        if (with_convention)
            cmd->add_option("--convention", opt.convention,
                            "Weyl normalization (standard|printed)")
                ->check(CLI::IsMember({"standard", "printed"}));
        cmd->add_option("--format", opt.format, "output format (text|json)")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output", opt.output,
                        "write the document to a file instead of stdout");
    };

    CLI::App* verify = app.add_subcommand(
        "verify",
        "run every check: tables, closed forms, and theorem identities");
    add_common(verify, true, true);
    CLI::App* classify = app.add_subcommand(
        "classify", "class membership and trace form for both metrics");
    add_common(classify, true, false);
    CLI::App* curvature = app.add_subcommand(
        "curvature", "curvature tensors, Ricci, and scalar for both metrics");
    add_common(curvature, true, false);
    CLI::App* norms = app.add_subcommand(
        "norms", "square norms of nabla J and the scalar curvatures");
    add_common(norms, true, false);
    CLI::App* invariants = app.add_subcommand(
        "invariants",
        "transfer tensor and the connection/curvature invariants");
    add_common(invariants, true, false);
    CLI::App* tables = app.add_subcommand(
        "tables", "the transcribed expected tables with printed/corrected "
                  "readings");
    add_common(tables, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(opt);
        if (classify->parsed()) return run_classify(opt);
        if (curvature->parsed()) return run_curvature(opt);
        if (norms->parsed()) return run_norms(opt);
        if (invariants->parsed()) return run_invariants(opt);
        if (tables->parsed()) return run_tables(opt);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
