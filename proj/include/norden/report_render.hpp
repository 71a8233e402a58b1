#pragma once

// Rendering of verification reports (deterministic text and JSON, with a
// JSON round-trip parser) and JSON serialization of tensors.
//
// JSON output uses canonical polynomial strings and sorted keys, so
// identical reports render byte-identically.  Erratum entries carry both
// the "printed" and the "corrected" reading.

#include "norden/tensor.hpp"
#include "norden/verify.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace norden {

enum class ReportFormat { text, json };

/// { "dim": 4, "valence": [r,s], "entries": [{"idx": [1,2,2], "val":
/// "-1*l1"}, ...] } with 1-based indices sorted lexicographically and zero
/// entries omitted.  Requires the canonical contravariant-then-covariant
/// slot order.
inline nlohmann::json tensor_to_json(const Tensor& t) {
    std::size_t ups = 0;
    bool down_seen = false;
    for (Variance v : t.slots()) {
        if (v == Variance::Up) {
            if (down_seen)
                throw error(
                    "tensor_to_json requires contravariant slots before "
                    "covariant ones");
            ++ups;
        } else {
            down_seen = true;
        }
    }
    nlohmann::json out;
    out["dim"] = t.dim();
    out["valence"] = {ups, t.rank() - ups};
    nlohmann::json entries = nlohmann::json::array();
    for (MultiIndex mi(t.dim(), t.rank()); !mi.done(); mi.next()) {
        if (t.at(*mi).is_zero()) continue;
        nlohmann::json entry;
        nlohmann::json idx = nlohmann::json::array();
        for (std::size_t i : *mi) idx.push_back(i + 1);
        entry["idx"] = std::move(idx);
        entry["val"] = to_string(t.at(*mi));
        entries.push_back(std::move(entry));
    }
    out["entries"] = std::move(entries);
    return out;
}

namespace detail {

inline nlohmann::json check_to_json(const Check& c) {
    nlohmann::json out;
    out["name"] = c.name;
    out["section"] = c.section;
    out["status"] = to_string(c.status);
    out["computed"] = c.computed;
    out["expected"] = c.expected;
    if (!c.printed.empty()) {
        out["printed"] = c.printed;
        out["corrected"] = c.expected;
    }
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

inline std::string section_heading(const std::string& section) {
    if (section == "closed-forms") return "[closed forms]";
    return "[" + section + "]";
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

inline std::string render_report(const VerificationReport& rep,
                                 ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::json out;
        out["mode"] = rep.mode;
        out["convention"] = rep.convention;
        nlohmann::json checks = nlohmann::json::array();
        for (const Check& c : rep.checks)
            checks.push_back(detail::check_to_json(c));
        out["checks"] = std::move(checks);
        out["summary"] = {{"checks", rep.checks.size()},
                          {"match", rep.matches},
                          {"erratum-match", rep.erratum_matches},
                          {"mismatch", rep.mismatches},
                          {"ok", rep.ok()}};
        return out.dump(2) + "\n";
    }

    std::string out;
    out += "mode: " + rep.mode + "\n";
    out += "convention: " + rep.convention + "\n";
    std::string section;
    for (const Check& c : rep.checks) {
        if (c.section != section) {
            section = c.section;
            out += "\n" + detail::section_heading(section) + "\n";
        }
        out += "  " + detail::pad(to_string(c.status), 14) +
               detail::pad(c.name, 30);
        switch (c.status) {
            case CheckStatus::match:
                out += c.computed;
                break;
            case CheckStatus::erratum_match:
                out += c.computed + "  (printed: " + c.printed + ")";
                break;
            case CheckStatus::mismatch:
                out += "computed " + c.computed + ", expected " + c.expected;
                break;
        }
        out += "\n";
    }
    out += "\nsummary: " + std::to_string(rep.checks.size()) + " checks, " +
           std::to_string(rep.matches) + " match, " +
           std::to_string(rep.erratum_matches) + " erratum-match, " +
           std::to_string(rep.mismatches) + " mismatch\n";
    return out;
}

/// Parse a JSON report back into a VerificationReport; validates the
/// summary block against the parsed checks.
inline VerificationReport parse_report(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("report: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("checks") ||
        !doc.at("checks").is_array() || !doc.contains("mode") ||
        !doc.contains("convention") || !doc.contains("summary"))
        throw parse_error(
            "report: expected an object with mode, convention, checks, "
            "and summary");
    VerificationReport rep;
    rep.mode = doc.at("mode").get<std::string>();
    rep.convention = doc.at("convention").get<std::string>();
    for (const nlohmann::json& entry : doc.at("checks")) {
        if (!entry.is_object() || !entry.contains("name") ||
            !entry.contains("section") || !entry.contains("status") ||
            !entry.contains("computed") || !entry.contains("expected"))
            throw parse_error("report: malformed check entry");
        Check c;
        c.name = entry.at("name").get<std::string>();
        c.section = entry.at("section").get<std::string>();
        c.computed = entry.at("computed").get<std::string>();
        c.expected = entry.at("expected").get<std::string>();
        if (entry.contains("printed"))
            c.printed = entry.at("printed").get<std::string>();
        if (entry.contains("note"))
            c.note = entry.at("note").get<std::string>();
        const std::string status = entry.at("status").get<std::string>();
        if (status == "match")
            c.status = CheckStatus::match;
        else if (status == "mismatch")
            c.status = CheckStatus::mismatch;
        else if (status == "erratum-match")
            c.status = CheckStatus::erratum_match;
        else
            throw parse_error("report: unknown status \"" + status + "\"");
        rep.add(std::move(c));
    }
    const nlohmann::json& summary = doc.at("summary");
    if (!summary.is_object() ||
        summary.value("checks", std::size_t(0)) != rep.checks.size() ||
        summary.value("match", std::size_t(0)) != rep.matches ||
        summary.value("erratum-match", std::size_t(0)) !=
            rep.erratum_matches ||
        summary.value("mismatch", std::size_t(0)) != rep.mismatches ||
        summary.value("ok", !rep.ok()) != rep.ok())
        throw parse_error("report: summary does not match the checks");
    return rep;
}

inline bool operator==(const Check& a, const Check& b) {
    return a.section == b.section && a.name == b.name &&
           a.status == b.status && a.computed == b.computed &&
           a.expected == b.expected && a.printed == b.printed &&
           a.note == b.note;
}

inline bool operator==(const VerificationReport& a,
                       const VerificationReport& b) {
    return a.mode == b.mode && a.convention == b.convention &&
           a.checks == b.checks;
}

}  // namespace norden
