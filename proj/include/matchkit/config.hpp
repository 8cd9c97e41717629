#pragma once

namespace matchkit {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Enumeration budgets. Exceeding one raises ResourceError, never truncates.
struct Budgets {
    long long max_group_order = 512;        // subgroup enumeration
    long long max_field_order = 4096;       // p^n for field-wide sweeps
    int max_matching_degree = 4;            // field degree for projective basis sweeps
    int oracle_max_set = 8;                 // factorial matching oracle
    long long oracle_max_field_order = 256; // full subspace-lattice oracles
    long long oracle_max_bases = 200000;    // ordered-basis enumeration oracles
    long long sweep_budget = 4000000;       // instance count for exhaustive sweeps
};

}  // namespace matchkit
