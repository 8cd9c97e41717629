#pragma once

#include "matchkit/config.hpp"
#include "matchkit/group_matching.hpp"
#include "matchkit/subspace.hpp"

namespace matchkit::oracle {

// Brute-force references. They share only the arithmetic layers with the
// engines, never the decision logic; factorial running times are acceptable.

/// Tries every bijection A -> B; true iff one avoids C on all sums.
bool brute_matching(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c,
                    const Budgets& budgets = {});

/// Tests every group element for C + g = C.
Subgroup brute_stabilizer(const GroupSubset& c);

/// Solves {x : xV subseteq V} by linear constraints and checks the result is
/// a subfield.
Subspace brute_stabilizer(const Subspace& v);

/// Every ordered basis of B against the literal matched-basis definition,
/// for one fixed ordered basis of A.
bool brute_basis_matchable(const std::vector<FqElem>& a_basis, const Subspace& a,
                           const Subspace& b, const Budgets& budgets = {});

/// Every ordered basis of A must admit some matched ordered basis of B.
bool brute_matched_basis(const Subspace& a, const Subspace& b, const Budgets& budgets = {});

/// Literal A-matchedness: for every ordered basis of Atil some independent
/// tuple (b_i) spanning Btil has all products a_i b_i outside A.
bool brute_is_A_matched(const Subspace& atil, const Subspace& btil, const Subspace& a,
                        const Budgets& budgets = {});

/// Does any subspace of A of dim(HcapB) satisfy brute_is_A_matched?
bool brute_exists_A_matched_subspace(const Subspace& a, const Subspace& h_cap_b,
                                     const Budgets& budgets = {});

/// Max dimension of a primitive subspace, by enumerating every echelon form.
int brute_mKL(const FieldExt& ext, const Budgets& budgets = {});

/// All ordered bases of V in canonical DFS order.
std::vector<std::vector<FqElem>> enumerate_ordered_bases(const Subspace& v,
                                                         const Budgets& budgets = {});

}  // namespace matchkit::oracle
