#include "matchkit/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace matchkit::oracle {

bool brute_matching(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c,
                    const Budgets& budgets) {
    if (a.group() != b.group() || a.group() != c.group())
        throw StructuralError("arguments in different groups");
    if (a.size() != b.size()) throw DomainError("bijection oracle requires #A = #B");
    if (static_cast<int>(a.size()) > budgets.oracle_max_set)
        throw ResourceError("bijection oracle is limited to sets of size <= " +
                            std::to_string(budgets.oracle_max_set));
    const auto& g = a.group();
    const auto& left = a.indices();
    auto right = b.indices();
    std::sort(right.begin(), right.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < left.size(); ++i)
            if (c.contains_index(g.add_index(left[i], right[i]))) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(right.begin(), right.end()));
    return false;
}

Subgroup brute_stabilizer(const GroupSubset& c) {
    if (c.empty()) throw DomainError("stabilizer of an empty set is undefined");
    const auto& g = c.group();
    std::vector<long long> carrier;
    for (long long cand = 0; cand < g.order(); ++cand) {
        bool stabilizes = true;
        for (long long x : c.indices())
            if (!c.contains_index(g.add_index(cand, x))) {
                stabilizes = false;
                break;
            }
        if (stabilizes) carrier.push_back(cand);
    }
    auto subset = GroupSubset::from_indices(g, std::move(carrier));
    if (!is_subgroup(subset)) throw SoundnessError("stabilizer is not a subgroup");
    return Subgroup{std::move(subset)};
}

Subspace brute_stabilizer(const Subspace& v) {
    if (v.dim() == 0) throw DomainError("stabilizer of the zero space is undefined");
    const auto& ext = v.ext();
    int n = ext.degree();
    int p = ext.characteristic();
    // x * v_j must reduce to zero against V's rows; the residual is linear in x.
    gflin::Mat equations;
    for (const auto& vj : v.basis_elements()) {
        std::vector<gflin::Row> residuals;
        for (int k = 0; k < n; ++k) {
            auto e = ext.zero();
            e.coeffs[static_cast<std::size_t>(k)] = 1;
            gflin::Row res = ext.mul(e, vj).coeffs;
            gflin::reduce_row(v.rows(), res, p);
            residuals.push_back(std::move(res));
        }
        for (int i = 0; i < n; ++i) {
            gflin::Row eq(static_cast<std::size_t>(n), 0);
            bool nonzero = false;
            for (int k = 0; k < n; ++k) {
                eq[static_cast<std::size_t>(k)] = residuals[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                if (eq[static_cast<std::size_t>(k)] != 0) nonzero = true;
            }
            if (nonzero) equations.push_back(std::move(eq));
        }
    }
    auto kernel = gflin::nullspace(equations, p, n);
    Subspace result(ext, kernel);
    if (!result.contains(ext.one())) throw SoundnessError("stabilizer misses 1");
    for (const auto& x : result.basis_elements())
        for (const auto& y : result.basis_elements())
            if (!result.contains(ext.mul(x, y)))
                throw SoundnessError("stabilizer is not closed under products");
    return result;
}

std::vector<std::vector<FqElem>> enumerate_ordered_bases(const Subspace& v,
                                                         const Budgets& budgets) {
    const auto& ext = v.ext();
    long long estimate = 1;
    long long size = 1;
    for (int i = 0; i < v.dim(); ++i) size *= ext.characteristic();
    for (int i = 0; i < v.dim(); ++i) {
        estimate *= size;
        if (estimate > budgets.oracle_max_bases)
            throw ResourceError("ordered-basis enumeration exceeds the configured budget");
    }
    std::vector<std::vector<FqElem>> out;
    auto elements = v.all_elements();
    std::vector<FqElem> chosen;
    gflin::Mat span;
    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(chosen.size()) == v.dim()) {
            out.push_back(chosen);
            return;
        }
        for (const auto& e : elements) {
            gflin::Row residual = e.coeffs;
            if (gflin::reduce_row(span, residual, ext.characteristic())) continue;
            chosen.push_back(e);
            auto saved = span;
            span.push_back(e.coeffs);
            span = gflin::rref(std::move(span), ext.characteristic());
            self(self);
            span = std::move(saved);
            chosen.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

bool brute_basis_matchable(const std::vector<FqElem>& a_basis, const Subspace& a,
                           const Subspace& b, const Budgets& budgets) {
    const auto& ext = a.ext();
    int n = a.dim();
    if (b.dim() != n || static_cast<int>(a_basis.size()) != n)
        throw DomainError("oracle requires equal dimensions and a full basis");
    auto b_elements = b.all_elements();
    for (const auto& b_basis : enumerate_ordered_bases(b, budgets)) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            std::vector<FqElem> others;
            for (int j = 0; j < n; ++j)
                if (j != i) others.push_back(b_basis[static_cast<std::size_t>(j)]);
            auto hyperplane = span_of(ext, others);
            for (const auto& be : b_elements) {
                if (!a.contains(ext.mul(a_basis[static_cast<std::size_t>(i)], be))) continue;
                if (!hyperplane.contains(be)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return true;
    }
    return false;
}

bool brute_matched_basis(const Subspace& a, const Subspace& b, const Budgets& budgets) {
    for (const auto& a_basis : enumerate_ordered_bases(a, budgets))
        if (!brute_basis_matchable(a_basis, a, b, budgets)) return false;
    return true;
}

namespace {

bool exists_avoiding_basis(const Subspace& btil, const std::vector<FqElem>& a_basis,
                           const Subspace& a) {
    const auto& ext = btil.ext();
    int m = btil.dim();
    auto elements = btil.all_elements();
    std::vector<FqElem> chosen;
    gflin::Mat span;
    auto dfs = [&](auto&& self, int level) -> bool {
        if (level == m) return true;
        for (const auto& e : elements) {
            if (a.contains(ext.mul(a_basis[static_cast<std::size_t>(level)], e))) continue;
            gflin::Row residual = e.coeffs;
            if (gflin::reduce_row(span, residual, ext.characteristic())) continue;
            chosen.push_back(e);
            auto saved = span;
            span.push_back(e.coeffs);
            span = gflin::rref(std::move(span), ext.characteristic());
            if (self(self, level + 1)) return true;
            span = std::move(saved);
            chosen.pop_back();
        }
        return false;
    };
    return dfs(dfs, 0);
}

}  // namespace

bool brute_is_A_matched(const Subspace& atil, const Subspace& btil, const Subspace& a,
                        const Budgets& budgets) {
    if (!a.contains(atil)) throw DomainError("Atil must be a subspace of A");
    if (atil.dim() != btil.dim()) throw DomainError("oracle requires equal dimensions");
    if (atil.dim() == 0) return true;
    for (const auto& a_basis : enumerate_ordered_bases(atil, budgets))
        if (!exists_avoiding_basis(btil, a_basis, a)) return false;
    return true;
}

bool brute_exists_A_matched_subspace(const Subspace& a, const Subspace& h_cap_b,
                                     const Budgets& budgets) {
    int m = h_cap_b.dim();
    for (const auto& atil : enumerate_subspaces_within(a, m))
        if (brute_is_A_matched(atil, h_cap_b, a, budgets)) return true;
    return false;
}

int brute_mKL(const FieldExt& ext, const Budgets& budgets) {
    if (ext.order() > budgets.oracle_max_field_order)
        throw ResourceError("subspace-lattice oracle is limited to order <= " +
                            std::to_string(budgets.oracle_max_field_order));
    for (int k = ext.degree(); k >= 1; --k) {
        for (const auto& v : enumerate_subspaces(ext, k)) {
            bool primitive = true;
            for (const auto& e : v.all_elements()) {
                if (ext.is_zero(e)) continue;
                if (generated_subfield(ext, e) != ext.degree()) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return k;
        }
    }
    return 0;
}

}  // namespace matchkit::oracle
