#include "matchkit/report.hpp"

#include <sstream>

namespace matchkit {

ReportFormat parse_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw DomainError("unknown format '" + std::string(name) + "' (expected json, csv or text)");
}

std::string csv_header() {
    return "command,instance,verdict,certificate,elapsed_ms,seed,engine_version";
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render(const VerdictReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: {
            nlohmann::ordered_json j;
            j["command"] = report.command;
            j["instance"] = report.instance;
            j["verdict"] = report.verdict;
            j["certificate"] = report.certificate;
            j["elapsed_ms"] = report.elapsed_ms;
            j["seed"] = report.seed;
            j["engine_version"] = report.engine_version;
            return j.dump();
        }
        case ReportFormat::Csv: {
            std::ostringstream out;
            out << csv_quote(report.command) << ',' << csv_quote(report.instance) << ','
                << csv_quote(report.verdict) << ',' << csv_quote(report.certificate.dump()) << ','
                << report.elapsed_ms << ',' << report.seed << ','
                << csv_quote(report.engine_version);
            return out.str();
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << report.command << " :: " << report.instance << " -> " << report.verdict;
            if (!report.certificate.is_null() && !report.certificate.empty())
                out << "  " << report.certificate.dump();
            return out.str();
        }
    }
    return {};
}

nlohmann::ordered_json subset_json(const GroupSubset& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : s.elements()) arr.push_back(s.group().format_element(e));
    return arr;
}

nlohmann::ordered_json matching_json(const MatchingMap& m) {
    nlohmann::ordered_json j;
    j["type"] = "matching";
    j["forbidden"] = subset_json(m.forbidden);
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    const auto& g = m.domain.group();
    for (const auto& [a, b] : m.pairs)
        pairs.push_back({g.format_element(a), g.format_element(b)});
    j["pairs"] = pairs;
    return j;
}

nlohmann::ordered_json hall_witness_json(const HallWitness& w) {
    nlohmann::ordered_json j;
    j["type"] = "hall_witness";
    j["S"] = subset_json(w.S);
    j["U"] = subset_json(w.U);
    return j;
}

nlohmann::ordered_json local_certificate_json(const LocalCertificate& c) {
    nlohmann::ordered_json j;
    j["locally_matched"] = c.locally_matched;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& t : c.triggered) {
        nlohmann::ordered_json entry;
        entry["H"] = subset_json(t.H.carrier);
        entry["H_cap_B"] = subset_json(t.h_cap_b);
        entry["ok"] = t.ok;
        if (t.ok) {
            nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
            const auto& g = t.h_cap_b.group();
            for (const auto& [a, b] : t.assignment)
                pairs.push_back({g.format_element(a), g.format_element(b)});
            entry["assignment"] = pairs;
        } else {
            entry["T"] = subset_json(*t.fail_T);
            entry["N"] = subset_json(*t.fail_N);
        }
        list.push_back(std::move(entry));
    }
    j["triggered"] = list;
    return j;
}

nlohmann::ordered_json kneser_json(const KneserRecord& r) {
    nlohmann::ordered_json j;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["H"] = subset_json(r.H.carrier);
    j["holds"] = r.holds;
    return j;
}

nlohmann::ordered_json sweep_json(const SweepOutcome& s) {
    nlohmann::ordered_json j;
    j["pairs_total"] = s.pairs_total;
    j["matched"] = s.matched_count;
    j["locally_matched"] = s.locally_matched_count;
    j["agreements"] = s.agreements;
    nlohmann::ordered_json bad = nlohmann::ordered_json::array();
    for (const auto& d : s.disagreements) {
        nlohmann::ordered_json entry;
        entry["A"] = subset_json(d.A);
        entry["B"] = subset_json(d.B);
        entry["matched"] = d.matched;
        entry["locally_matched"] = d.locally_matched;
        bad.push_back(std::move(entry));
    }
    j["disagreements"] = bad;
    j["digest"] = hex64(s.digest);
    return j;
}

nlohmann::ordered_json subspace_json(const Subspace& v) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : v.rows()) rows.push_back(row);
    return rows;
}

nlohmann::ordered_json elements_json(const FieldExt& ext, const std::vector<FqElem>& elems) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : elems) arr.push_back(ext.format_element(e));
    return arr;
}

nlohmann::ordered_json linear_kneser_json(const LinearKneserRecord& r) {
    nlohmann::ordered_json j;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["H"] = subspace_json(r.H);
    j["holds"] = r.holds;
    return j;
}

nlohmann::ordered_json basis_matching_json(const BasisMatching& bm) {
    nlohmann::ordered_json j;
    j["a_basis"] = elements_json(bm.A.ext(), bm.a_basis);
    j["b_basis"] = elements_json(bm.B.ext(), bm.b_basis);
    return j;
}

nlohmann::ordered_json transversal_json(const TransversalCertificate& t) {
    nlohmann::ordered_json j;
    j["found"] = t.found;
    if (t.found) {
        if (t.family.empty()) {
            j["transversal"] = nlohmann::ordered_json::array();
        } else {
            j["transversal"] = elements_json(t.family.front().ext(), t.transversal);
        }
    } else {
        j["violating_J"] = t.violating_J;
    }
    return j;
}

nlohmann::ordered_json linear_local_json(const LinearLocalCertificate& c, const FieldExt& ext) {
    nlohmann::ordered_json j;
    j["locally_matched"] = c.locally_matched;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& t : c.triggered) {
        nlohmann::ordered_json entry;
        entry["subfield_degree"] = t.subfield_degree;
        entry["H_cap_B"] = subspace_json(t.h_cap_b);
        entry["ok"] = t.ok;
        if (t.ok) {
            entry["A_tilde"] = subspace_json(*t.a_tilde);
            entry["reverified"] = t.reverified;
            entry["reverify_method"] = t.reverify_method;
        } else {
            entry["violating_S"] = elements_json(ext, t.violating_S);
        }
        list.push_back(std::move(entry));
    }
    j["triggered"] = list;
    return j;
}

nlohmann::ordered_json mn_json(const MNReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["nKL"] = r.nKL;
    j["mKL"] = r.mKL;
    j["primitive_witness"] = subspace_json(r.primitive_witness);
    j["identity_holds"] = r.identity_holds;
    return j;
}

nlohmann::ordered_json thm41_json(const Thm41Outcome& o) {
    nlohmann::ordered_json j;
    j["pairs_checked"] = o.pairs_checked;
    j["primitive_spaces"] = o.primitive_spaces;
    j["all_matched"] = o.all_matched;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& [a, b] : o.failures) {
        nlohmann::ordered_json entry;
        entry["A"] = subspace_json(a);
        entry["B"] = subspace_json(b);
        failures.push_back(std::move(entry));
    }
    j["failures"] = failures;
    j["digest"] = hex64(o.digest);
    return j;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace matchkit
