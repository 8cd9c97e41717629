#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "matchkit/group_matching.hpp"
#include "matchkit/linear_matching.hpp"

namespace matchkit {

/// Machine-readable outcome of one decision. JSON keys are exactly these
/// field names, in this order.
struct VerdictReport {
    std::string command;
    std::string instance;
    std::string verdict;  // true | false | holds | fails
    nlohmann::ordered_json certificate;
    long long elapsed_ms = 0;
    std::uint64_t seed = 0;
    std::string engine_version = kEngineVersion;
};

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(std::string_view name);
std::string csv_header();
std::string render(const VerdictReport& report, ReportFormat format);

// JSON builders for certificate payloads.
nlohmann::ordered_json subset_json(const GroupSubset& s);
nlohmann::ordered_json matching_json(const MatchingMap& m);
nlohmann::ordered_json hall_witness_json(const HallWitness& w);
nlohmann::ordered_json local_certificate_json(const LocalCertificate& c);
nlohmann::ordered_json kneser_json(const KneserRecord& r);
nlohmann::ordered_json sweep_json(const SweepOutcome& s);
nlohmann::ordered_json subspace_json(const Subspace& v);  // row lists of coefficient vectors
nlohmann::ordered_json elements_json(const FieldExt& ext, const std::vector<FqElem>& elems);
nlohmann::ordered_json linear_kneser_json(const LinearKneserRecord& r);
nlohmann::ordered_json basis_matching_json(const BasisMatching& bm);
nlohmann::ordered_json transversal_json(const TransversalCertificate& t);
nlohmann::ordered_json linear_local_json(const LinearLocalCertificate& c, const FieldExt& ext);
nlohmann::ordered_json mn_json(const MNReport& r);
nlohmann::ordered_json thm41_json(const Thm41Outcome& o);

std::string hex64(std::uint64_t value);

}  // namespace matchkit
