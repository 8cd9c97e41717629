#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matchkit/config.hpp"
#include "matchkit/group.hpp"

namespace matchkit {

/// Bijection certificate: pair (a, f(a)) per element of A, sorted by a, with
/// a + f(a) outside the forbidden set (A itself for plain matchings).
struct MatchingMap {
    GroupSubset domain;
    GroupSubset codomain;
    GroupSubset forbidden;
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
};

/// Failure certificate: S subseteq A with U = {b in B : s+b in C for all s in S}
/// and #B - #U < #S, recheckable without trusting the matching code.
struct HallWitness {
    GroupSubset domain;
    GroupSubset codomain;
    GroupSubset forbidden;
    GroupSubset S;
    GroupSubset U;
};

struct MatchResult {
    std::optional<MatchingMap> matching;
    std::optional<HallWitness> witness;

    bool matched() const { return matching.has_value(); }
};

/// Maximum bipartite matching on edges {(a,b) : a+b not in A}; on failure the
/// witness comes from the final alternating-reachability cut.
MatchResult find_matching(const GroupSubset& a, const GroupSubset& b);

/// Same with forbidden set C; requires A subseteq C.
MatchResult find_c_matching(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c);

bool verify_matching_map(const MatchingMap& m);
bool verify_hall_witness(const HallWitness& w);

/// H = {g : g + C = C}.
Subgroup kneser_stabilizer(const GroupSubset& c);

struct KneserRecord {
    GroupSubset C;
    Subgroup H;
    long long lhs = 0;
    long long rhs = 0;
    bool holds = false;
};

/// #(A+B) >= #A + #B - #H. `holds` false signals an implementation bug.
KneserRecord verify_kneser(const GroupSubset& a, const GroupSubset& b);

struct LocalSubgroupOutcome {
    Subgroup H;
    GroupSubset h_cap_b;
    bool ok = false;
    // on success: pairs (a, b) of the injective assignment saturating H cap B
    std::vector<std::pair<GroupElement, GroupElement>> assignment;
    // on failure: T subseteq H cap B whose neighborhood N in A is too small
    std::optional<GroupSubset> fail_T;
    std::optional<GroupSubset> fail_N;
};

struct LocalCertificate {
    bool locally_matched = false;
    std::vector<LocalSubgroupOutcome> triggered;
};

/// For every proper subgroup H meeting B with some a+H inside A, decides
/// whether an injective b -> a_b (b in H cap B, a_b + b not in A) exists.
LocalCertificate is_locally_matched(const GroupSubset& a, const GroupSubset& b,
                                    const Budgets& budgets = {});

/// Finite case: true iff the order is prime.
bool has_matching_property(const FiniteAbelianGroup& g);

/// A = H, B = H u {g} minus {0} for the first non-trivial proper subgroup H in
/// canonical carrier order and the first g outside H.
std::pair<GroupSubset, GroupSubset> counterexample_pair(const FiniteAbelianGroup& g,
                                                        const Budgets& budgets = {});

struct SweepDisagreement {
    GroupSubset A;
    GroupSubset B;
    bool matched = false;
    bool locally_matched = false;
};

struct SweepOutcome {
    long long pairs_total = 0;
    long long matched_count = 0;
    long long locally_matched_count = 0;
    long long agreements = 0;
    std::vector<SweepDisagreement> disagreements;  // capped listing
    std::uint64_t digest = 0;
};

/// All pairs (A,B) with |A| = |B| <= max_size and 0 not in B, in canonical pair
/// order; records matching vs. local-matchability agreement per pair.
SweepOutcome exhaustive_matchability(const FiniteAbelianGroup& g, int max_size,
                                     const Budgets& budgets = {}, int workers = 1);

}  // namespace matchkit
