#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchkit/report.hpp"

namespace matchkit {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int workers = 1;
    Budgets budgets{};
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    long long elapsed_ms = 0;
    nlohmann::ordered_json details;
};

struct VerifyRun {
    std::vector<VerdictReport> records;
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
    std::string stream;  // canonical report payload; byte-identical across
                         // runs with the same seed and any worker count
};

/// The full acceptance suite. The determinism criterion re-runs the other
/// criteria with a different worker count and compares payloads bytewise.
VerifyRun run_acceptance(const VerifyOptions& options);

/// Oracle/engine agreement sweeps for every decision procedure.
VerifyRun run_oracle_agreement(const VerifyOptions& options);

}  // namespace matchkit
