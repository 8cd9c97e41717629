#include "matchkit/group_matching.hpp"

#include <algorithm>
#include <deque>

#include "matchkit/util.hpp"

namespace matchkit {

namespace {

/// Kuhn augmenting paths with canonical vertex order; deterministic output.
struct Bipartite {
    std::vector<std::vector<int>> adj;  // left -> sorted right neighbours
    std::vector<int> match_left;
    std::vector<int> match_right;

    explicit Bipartite(std::size_t lefts, std::size_t rights)
        : adj(lefts), match_left(lefts, -1), match_right(rights, -1) {}

    bool augment(int u, std::vector<char>& seen) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            if (match_right[static_cast<std::size_t>(v)] < 0 ||
                augment(match_right[static_cast<std::size_t>(v)], seen)) {
                match_left[static_cast<std::size_t>(u)] = v;
                match_right[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    }

    int run() {
        int matched = 0;
        for (std::size_t u = 0; u < adj.size(); ++u) {
            std::vector<char> seen(match_right.size(), 0);
            if (augment(static_cast<int>(u), seen)) ++matched;
        }
        return matched;
    }

    /// Left vertices reachable from unmatched lefts by alternating paths.
    std::vector<char> alternating_reachable_lefts() const {
        std::vector<char> left_seen(adj.size(), 0);
        std::vector<char> right_seen(match_right.size(), 0);
        std::deque<int> queue;
        for (std::size_t u = 0; u < adj.size(); ++u)
            if (match_left[u] < 0) {
                left_seen[u] = 1;
                queue.push_back(static_cast<int>(u));
            }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (right_seen[static_cast<std::size_t>(v)]) continue;
                right_seen[static_cast<std::size_t>(v)] = 1;
                int w = match_right[static_cast<std::size_t>(v)];
                if (w >= 0 && !left_seen[static_cast<std::size_t>(w)]) {
                    left_seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
            }
        }
        return left_seen;
    }
};

/// The lexicographically first feasible bijection: fix each left vertex in
/// canonical order to its smallest partner that still leaves the rest
/// matchable. Certificates are then independent of search internals.
std::vector<int> lex_canonical_matching(const std::vector<std::vector<int>>& adj,
                                        std::size_t rights) {
    std::size_t k = adj.size();
    std::vector<int> fixed(k, -1);
    std::vector<char> used(rights, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (int j : adj[i]) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = 1;
            Bipartite rest(k - i - 1, rights);
            for (std::size_t u = i + 1; u < k; ++u)
                for (int v : adj[u])
                    if (!used[static_cast<std::size_t>(v)])
                        rest.adj[u - i - 1].push_back(v);
            if (rest.run() == static_cast<int>(k - i - 1)) {
                fixed[i] = j;
                break;
            }
            used[static_cast<std::size_t>(j)] = 0;
        }
        if (fixed[i] < 0)
            throw SoundnessError("no extendable partner although a full matching exists");
    }
    return fixed;
}

MatchResult match_core(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c) {
    const auto& g = a.group();
    const auto& left = a.indices();
    const auto& right = b.indices();
    Bipartite graph(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
            if (!c.contains_index(g.add_index(left[i], right[j])))
                graph.adj[i].push_back(static_cast<int>(j));
    int matched = graph.run();

    MatchResult result;
    if (static_cast<std::size_t>(matched) == left.size()) {
        auto canonical = lex_canonical_matching(graph.adj, right.size());
        MatchingMap map{a, b, c, {}};
        for (std::size_t i = 0; i < left.size(); ++i)
            map.pairs.emplace_back(
                g.element_at(left[i]),
                g.element_at(right[static_cast<std::size_t>(canonical[i])]));
        if (!verify_matching_map(map)) throw SoundnessError("matching failed re-verification");
        result.matching = std::move(map);
        return result;
    }

    auto reachable = graph.alternating_reachable_lefts();
    std::vector<long long> s_idx;
    for (std::size_t i = 0; i < left.size(); ++i)
        if (reachable[i]) s_idx.push_back(left[i]);
    // U recomputed from its definition so the witness is independently checkable.
    std::vector<long long> u_idx;
    for (long long bi : right) {
        bool all_inside = true;
        for (long long si : s_idx)
            if (!c.contains_index(g.add_index(si, bi))) {
                all_inside = false;
                break;
            }
        if (all_inside) u_idx.push_back(bi);
    }
    HallWitness witness{a, b, c, GroupSubset::from_indices(g, std::move(s_idx)),
                        GroupSubset::from_indices(g, std::move(u_idx))};
    if (!verify_hall_witness(witness)) throw SoundnessError("Hall witness failed re-verification");
    result.witness = std::move(witness);
    return result;
}

}  // namespace

MatchResult find_matching(const GroupSubset& a, const GroupSubset& b) {
    if (a.group() != b.group()) throw StructuralError("matching arguments in different groups");
    if (a.empty()) throw DomainError("matching requires non-empty subsets");
    if (a.size() != b.size())
        throw DomainError("matching requires #A = #B (got " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()) + ")");
    return match_core(a, b, a);
}

MatchResult find_c_matching(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c) {
    if (a.group() != b.group() || a.group() != c.group())
        throw StructuralError("matching arguments in different groups");
    if (a.empty()) throw DomainError("matching requires non-empty subsets");
    if (a.size() != b.size()) throw DomainError("matching requires #A = #B");
    for (long long x : a.indices())
        if (!c.contains_index(x)) throw DomainError("C-matching requires A to be a subset of C");
    return match_core(a, b, c);
}

bool verify_matching_map(const MatchingMap& m) {
    const auto& g = m.domain.group();
    std::vector<long long> firsts;
    std::vector<long long> seconds;
    for (const auto& [a, b] : m.pairs) {
        if (m.forbidden.contains(g.add(a, b))) return false;
        firsts.push_back(g.index_of(a));
        seconds.push_back(g.index_of(b));
    }
    std::sort(firsts.begin(), firsts.end());
    std::sort(seconds.begin(), seconds.end());
    return firsts == m.domain.indices() && seconds == m.codomain.indices();
}

bool verify_hall_witness(const HallWitness& w) {
    const auto& g = w.domain.group();
    if (w.S.empty()) return false;
    for (long long s : w.S.indices())
        if (!w.domain.contains_index(s)) return false;
    std::vector<long long> expected_u;
    for (long long b : w.codomain.indices()) {
        bool all_inside = true;
        for (long long s : w.S.indices())
            if (!w.forbidden.contains_index(g.add_index(s, b))) {
                all_inside = false;
                break;
            }
        if (all_inside) expected_u.push_back(b);
    }
    if (expected_u != w.U.indices()) return false;
    return static_cast<long long>(w.codomain.size()) - static_cast<long long>(w.U.size()) <
           static_cast<long long>(w.S.size());
}

Subgroup kneser_stabilizer(const GroupSubset& c) {
    if (c.empty()) throw DomainError("stabilizer of an empty set is undefined");
    const auto& g = c.group();
    // Any stabilizing g satisfies g + c0 in C, so candidates are C - c0.
    long long c0 = c.indices().front();
    std::vector<long long> carrier;
    for (long long ci : c.indices()) {
        long long cand = g.add_index(ci, g.negate_index(c0));
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

KneserRecord verify_kneser(const GroupSubset& a, const GroupSubset& b) {
    KneserRecord rec{sumset(a, b), Subgroup{GroupSubset::from_indices(a.group(), {0})}, 0, 0,
                     false};
    rec.H = kneser_stabilizer(rec.C);
    rec.lhs = static_cast<long long>(rec.C.size());
    rec.rhs = static_cast<long long>(a.size()) + static_cast<long long>(b.size()) -
              static_cast<long long>(rec.H.carrier.size());
    rec.holds = rec.lhs >= rec.rhs;
    return rec;
}

LocalCertificate is_locally_matched(const GroupSubset& a, const GroupSubset& b,
                                    const Budgets& budgets) {
    if (a.group() != b.group()) throw StructuralError("arguments in different groups");
    if (a.size() != b.size()) throw DomainError("local matchability requires #A = #B");
    const auto& g = a.group();
    LocalCertificate cert;
    cert.locally_matched = true;
    for (const auto& h : subgroups(g, budgets.max_group_order)) {
        if (static_cast<long long>(h.carrier.size()) == g.order()) continue;  // proper only
        std::vector<long long> cap;
        for (long long x : h.carrier.indices())
            if (b.contains_index(x)) cap.push_back(x);
        if (cap.empty()) continue;
        bool coset_inside = false;
        for (long long ai : a.indices()) {
            bool inside = true;
            for (long long hi : h.carrier.indices())
                if (!a.contains_index(g.add_index(ai, hi))) {
                    inside = false;
                    break;
                }
            if (inside) {
                coset_inside = true;
                break;
            }
        }
        if (!coset_inside) continue;

        LocalSubgroupOutcome outcome{h, GroupSubset::from_indices(g, cap), false, {}, {}, {}};
        // A-matching from a subset of A onto H cap B: saturate the left side.
        const auto& left = outcome.h_cap_b.indices();
        const auto& right = a.indices();
        Bipartite graph(left.size(), right.size());
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                if (!a.contains_index(g.add_index(right[j], left[i])))
                    graph.adj[i].push_back(static_cast<int>(j));
        int matched = graph.run();
        if (static_cast<std::size_t>(matched) == left.size()) {
            outcome.ok = true;
            for (std::size_t i = 0; i < left.size(); ++i)
                outcome.assignment.emplace_back(
                    g.element_at(right[static_cast<std::size_t>(graph.match_left[i])]),
                    g.element_at(left[i]));
        } else {
            auto reachable = graph.alternating_reachable_lefts();
            std::vector<long long> t_idx;
            std::vector<char> n_mark(static_cast<std::size_t>(g.order()), 0);
            for (std::size_t i = 0; i < left.size(); ++i) {
                if (!reachable[i]) continue;
                t_idx.push_back(left[i]);
                for (int j : graph.adj[i]) n_mark[static_cast<std::size_t>(right[static_cast<std::size_t>(j)])] = 1;
            }
            std::vector<long long> n_idx;
            for (long long i = 0; i < g.order(); ++i)
                if (n_mark[static_cast<std::size_t>(i)]) n_idx.push_back(i);
            outcome.fail_T = GroupSubset::from_indices(g, std::move(t_idx));
            outcome.fail_N = GroupSubset::from_indices(g, std::move(n_idx));
            cert.locally_matched = false;
        }
        cert.triggered.push_back(std::move(outcome));
    }
    return cert;
}

bool has_matching_property(const FiniteAbelianGroup& g) {
    long long n = g.order();
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<GroupSubset, GroupSubset> counterexample_pair(const FiniteAbelianGroup& g,
                                                        const Budgets& budgets) {
    if (has_matching_property(g))
        throw DomainError("group " + g.spec_string() + " has the matching property");
    if (g.order() < 3) throw DomainError("counterexample construction needs order >= 3");
    for (const auto& h : subgroups(g, budgets.max_group_order)) {
        auto size = static_cast<long long>(h.carrier.size());
        if (size <= 1 || size == g.order()) continue;
        long long outside = 0;
        while (h.carrier.contains_index(outside)) ++outside;
        std::vector<long long> b_idx;
        for (long long x : h.carrier.indices())
            if (x != 0) b_idx.push_back(x);
        b_idx.push_back(outside);
        return {h.carrier, GroupSubset::from_indices(g, std::move(b_idx))};
    }
    throw SoundnessError("no non-trivial proper subgroup found in a non-prime group");
}

namespace {

bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - (k - i)) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<long long>> combinations_of(const std::vector<long long>& pool, int k) {
    std::vector<std::vector<long long>> out;
    if (k > static_cast<int>(pool.size()) || k <= 0) return out;
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    do {
        std::vector<long long> pick;
        pick.reserve(static_cast<std::size_t>(k));
        for (int i : c) pick.push_back(pool[static_cast<std::size_t>(i)]);
        out.push_back(std::move(pick));
    } while (next_combination(c, static_cast<int>(pool.size())));
    return out;
}

}  // namespace

SweepOutcome exhaustive_matchability(const FiniteAbelianGroup& g, int max_size,
                                     const Budgets& budgets, int workers) {
    std::vector<long long> all;
    std::vector<long long> nonzero;
    for (long long i = 0; i < g.order(); ++i) {
        all.push_back(i);
        if (i != 0) nonzero.push_back(i);
    }

    auto binomial = [](long long n, int k) {
        long long value = 1;
        for (int i = 1; i <= k; ++i) {
            value = value * (n - i + 1) / i;
            if (value > (1ll << 50)) return 1ll << 50;
        }
        return value;
    };
    long long estimate = 0;
    for (int k = 1; k <= max_size; ++k)
        estimate += binomial(g.order(), k) * binomial(g.order() - 1, k);
    if (estimate > budgets.sweep_budget)
        throw ResourceError("exhaustive sweep over " + g.spec_string() + " up to size " +
                            std::to_string(max_size) + " needs " + std::to_string(estimate) +
                            " pairs; the budget is " + std::to_string(budgets.sweep_budget));

    struct Task {
        GroupSubset A;
        GroupSubset B;
    };
    std::vector<Task> tasks;
    for (int k = 1; k <= max_size; ++k) {
        auto as = combinations_of(all, k);
        auto bs = combinations_of(nonzero, k);
        for (const auto& ai : as)
            for (const auto& bi : bs)
                tasks.push_back(Task{GroupSubset::from_indices(g, ai),
                                     GroupSubset::from_indices(g, bi)});
    }

    struct Row {
        bool matched = false;
        bool local = false;
    };
    std::vector<Row> rows(tasks.size());
    parallel_for(static_cast<long long>(tasks.size()), workers, [&](long long i) {
        const auto& t = tasks[static_cast<std::size_t>(i)];
        rows[static_cast<std::size_t>(i)].matched = find_matching(t.A, t.B).matched();
        rows[static_cast<std::size_t>(i)].local = is_locally_matched(t.A, t.B, budgets).locally_matched;
    });

    SweepOutcome outcome;
    outcome.pairs_total = static_cast<long long>(tasks.size());
    Fnv1a digest;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& row = rows[i];
        if (row.matched) ++outcome.matched_count;
        if (row.local) ++outcome.locally_matched_count;
        if (row.matched == row.local) {
            ++outcome.agreements;
        } else if (outcome.disagreements.size() < 16) {
            outcome.disagreements.push_back(
                SweepDisagreement{tasks[i].A, tasks[i].B, row.matched, row.local});
        }
        digest.feed(tasks[i].A.format());
        digest.feed(tasks[i].B.format());
        digest.feed(row.matched ? "|1" : "|0");
        digest.feed(row.local ? "1" : "0");
    }
    outcome.digest = digest.value();
    return outcome;
}

}  // namespace matchkit
