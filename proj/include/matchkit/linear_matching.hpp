#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchkit/config.hpp"
#include "matchkit/subspace.hpp"

namespace matchkit {

/// Matched bases: a_i b in A forces b into the hyperplane of B spanned by the
/// other b_j; equivalently a_i^{-1}A cap B lies inside that hyperplane.
struct BasisMatching {
    Subspace A;
    Subspace B;
    std::vector<FqElem> a_basis;
    std::vector<FqElem> b_basis;
};

struct BasisCriterion {
    bool matchable = false;
    std::vector<int> violating_J;  // 1-based indices into a_basis, empty on success
};

/// dim of the intersection of a_i^{-1}A cap B over i in J must stay <= n - #J
/// for every J; returns the first violating J in (size, lex) order, which is
/// automatically minimal.
BasisCriterion basis_matchable(const std::vector<FqElem>& a_basis, const Subspace& a,
                               const Subspace& b);

struct TransversalCertificate {
    std::vector<Subspace> family;
    bool found = false;
    std::vector<FqElem> transversal;   // independent, one vector per subspace
    std::vector<int> violating_J;      // 1-based, dim(sum over J) < #J
};

/// Canonical-order backtracking over projective points with rank pruning.
TransversalCertificate free_transversal(const std::vector<Subspace>& family);

/// Enlarges each E_i so that every intersection over J has dimension exactly
/// n - #J, via a free transversal in the dual.
std::vector<Subspace> extend_family(const std::vector<Subspace>& family, const Subspace& within);

struct MatchedBasisResult {
    std::optional<BasisMatching> matching;
    std::vector<int> violating_J;  // set when the criterion fails
};

/// Dual free-transversal construction: phi_i in (a_i^{-1}A cap B)-perp
/// independent, b_basis dual to (phi_i). Output re-verified literally.
MatchedBasisResult find_matched_basis(const std::vector<FqElem>& a_basis, const Subspace& a,
                                      const Subspace& b);

/// Literal matched-basis condition, quantifying b over all of B by linear
/// algebra. Used as the soundness re-checker.
bool verify_basis_matching(const BasisMatching& bm);

struct SpaceMatchedResult {
    bool matched = false;
    std::vector<FqElem> failing_S;  // independent set violating the criterion
};

/// Universal quantification over bases of A reduced to independent subsets of
/// projective-point representatives (the criterion only sees the unordered
/// set {a_i^{-1}A}, which is scalar-invariant).
SpaceMatchedResult space_matched(const Subspace& a, const Subspace& b, const Budgets& budgets = {});

/// For every basis of Atil there is a basis of Btil with all products outside
/// A; decided by the same subset criterion relative to Btil.
bool is_A_matched(const Subspace& atil, const Subspace& btil, const Subspace& a,
                  const Budgets& budgets = {});

/// A_b = {x in A : xb in A} = A cap b^{-1}A.
Subspace compute_Ab(const Subspace& a, const FqElem& b);

struct LocalSubfieldOutcome {
    int subfield_degree = 0;
    Subspace H;
    Subspace h_cap_b;
    bool ok = false;
    std::vector<FqElem> violating_S;   // failure certificate
    std::optional<Subspace> a_tilde;   // constructed witness on success
    bool reverified = false;
    std::string reverify_method;       // "criterion" or "exhaustive"
};

struct LinearLocalCertificate {
    bool locally_matched = false;
    std::vector<LocalSubfieldOutcome> triggered;
};

/// For every proper subfield H with H cap B nonzero and aH inside A for some
/// a in A: decide existence of Atil inside A that is A-matched to H cap B.
LinearLocalCertificate is_locally_matched_linear(const Subspace& a, const Subspace& b,
                                                 const Budgets& budgets = {});

struct PrimitiveResult {
    bool primitive = false;
    std::optional<FqElem> witness;  // nonzero element generating a proper subfield
};

/// K(b) = L for every nonzero b in B.
PrimitiveResult is_primitive(const Subspace& b, const Budgets& budgets = {});

struct MNReport {
    FieldExt ext;
    int n = 0;
    int nKL = 0;  // max [F:K] over proper intermediate fields = largest proper divisor
    int mKL = 0;  // max dimension of a primitive subspace
    Subspace primitive_witness;
    bool identity_holds = false;  // a false value is a reported finding, never an error
};

MNReport compute_mn(const FieldExt& ext, const Budgets& budgets = {});

struct Thm41Outcome {
    long long pairs_checked = 0;
    long long primitive_spaces = 0;
    bool all_matched = false;
    std::vector<std::pair<Subspace, Subspace>> failures;
    std::uint64_t digest = 0;
};

/// All equal-dimension pairs (A, B) with B primitive and dim <= dim_budget
/// must come out matched.
Thm41Outcome theorem41_check(const FieldExt& ext, int dim_budget, const Budgets& budgets = {},
                             int workers = 1);

/// Rado-style dimension condition, computed by a full subset scan. Exposed so
/// tests can compare it with the transversal search independently.
bool rado_condition(const std::vector<Subspace>& family, std::vector<int>* violating = nullptr);

/// Subspace rows parsed from "row;row;..." where each row is a polynomial in
/// t or a comma-separated coefficient vector. "0" alone denotes {0}.
Subspace parse_subspace(const FieldExt& ext, std::string_view text);

}  // namespace matchkit
