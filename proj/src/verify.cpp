#include "matchkit/verify.hpp"

#include <algorithm>
#include <chrono>

#include "matchkit/oracle.hpp"
#include "matchkit/util.hpp"

namespace matchkit {

namespace {

using nlohmann::ordered_json;

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

/// All product presentations (non-decreasing moduli >= 2) with order in
/// [2, max_order], sorted by (order, factor count, moduli).
std::vector<std::vector<int>> presentations_up_to(long long max_order) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, long long product, int min_factor) -> void {
        if (!current.empty()) out.push_back(current);
        for (int d = min_factor; product * d <= max_order; ++d) {
            current.push_back(d);
            self(self, product * d, d);
            current.pop_back();
        }
    };
    rec(rec, 1, 2);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        long long pa = 1;
        long long pb = 1;
        for (int d : a) pa *= d;
        for (int d : b) pb *= d;
        if (pa != pb) return pa < pb;
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

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

std::vector<std::vector<long long>> combos(const std::vector<long long>& pool, int k) {
    std::vector<std::vector<long long>> out;
    if (k <= 0 || k > static_cast<int>(pool.size())) return out;
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    do {
        std::vector<long long> pick;
        for (int i : c) pick.push_back(pool[static_cast<std::size_t>(i)]);
        out.push_back(std::move(pick));
    } while (next_combination(c, static_cast<int>(pool.size())));
    return out;
}

Subspace random_subspace(const FieldExt& ext, SplitMix64& rng, int min_dim) {
    for (;;) {
        int d = min_dim + static_cast<int>(rng.bounded(
                              static_cast<std::uint64_t>(ext.degree() - min_dim + 1)));
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < d; ++i) {
            std::vector<int> row(static_cast<std::size_t>(ext.degree()));
            for (auto& c : row)
                c = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(ext.characteristic())));
            rows.push_back(std::move(row));
        }
        Subspace s(ext, rows);
        if (s.dim() >= min_dim) return s;
    }
}

bool intersection_condition(const std::vector<Subspace>& family, const Subspace& within) {
    int n = within.dim();
    int k = static_cast<int>(family.size());
    for (int size = 1; size <= k; ++size) {
        std::vector<int> c(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
        do {
            Subspace w = family[static_cast<std::size_t>(c[0])];
            for (int i = 1; i < size; ++i)
                w = intersect(w, family[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])]);
            if (w.dim() > n - size) return false;
        } while (next_combination(c, k));
    }
    return true;
}

struct Collector {
    VerifyRun* run;
    const VerifyOptions* options;

    void add(int id, const std::string& name, bool pass, long long elapsed,
             const std::string& instance, ordered_json details) {
        VerdictReport record;
        record.command = "verify.c" + std::to_string(id);
        record.instance = instance;
        record.verdict = pass ? "holds" : "fails";
        record.certificate = details;
        record.elapsed_ms = 0;  // timing is kept out of the reproducible stream
        record.seed = options->seed;
        run->records.push_back(record);
        run->criteria.push_back(CriterionResult{id, name, pass, elapsed, std::move(details)});
    }
};

// ---------------------------------------------------------------- criterion 1

void criterion_prime_matchings(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    std::vector<int> orders{2, 3, 5, 7, 11};
    long long pairs = 0;
    long long failures = 0;
    Fnv1a digest;
    for (int order : orders) {
        FiniteAbelianGroup g({order});
        std::vector<long long> all;
        std::vector<long long> nonzero;
        for (long long i = 0; i < g.order(); ++i) {
            all.push_back(i);
            if (i != 0) nonzero.push_back(i);
        }
        for (int k = 1; k <= 3; ++k) {
            auto as = combos(all, k);
            auto bs = combos(nonzero, k);
            long long total = static_cast<long long>(as.size()) * static_cast<long long>(bs.size());
            std::vector<char> ok(static_cast<std::size_t>(total), 0);
            parallel_for(total, opt.workers, [&](long long t) {
                auto A = GroupSubset::from_indices(g, as[static_cast<std::size_t>(t / static_cast<long long>(bs.size()))]);
                auto B = GroupSubset::from_indices(g, bs[static_cast<std::size_t>(t % static_cast<long long>(bs.size()))]);
                bool engine = find_matching(A, B).matched();
                bool brute = oracle::brute_matching(A, B, A, opt.budgets);
                ok[static_cast<std::size_t>(t)] = (engine && brute) ? 1 : 0;
            });
            pairs += total;
            for (long long t = 0; t < total; ++t) {
                if (!ok[static_cast<std::size_t>(t)]) ++failures;
                digest.feed(ok[static_cast<std::size_t>(t)] ? "1" : "0");
            }
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["groups"] = {"Z2", "Z3", "Z5", "Z7", "Z11"};
    details["pairs"] = pairs;
    details["failures"] = failures;
    details["digest"] = hex64(digest.value());
    col.add(1, "prime cyclic groups: every admissible pair is matched",
            failures == 0 && elapsed < 60000, elapsed,
            "prime cyclic groups, pairs up to size 3, 0 outside B", details);
}

// ---------------------------------------------------------------- criterion 2

void criterion_counterexamples(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long checked = 0;
    long long failures = 0;
    ordered_json groups = ordered_json::array();
    for (const auto& moduli : presentations_up_to(16)) {
        FiniteAbelianGroup g(moduli);
        if (has_matching_property(g)) continue;
        auto [A, B] = counterexample_pair(g, opt.budgets);
        bool sizes_ok = A.size() == B.size() && !B.contains_index(0);
        bool engine_fails = !find_matching(A, B).matched();
        bool brute_fails = !oracle::brute_matching(A, B, A, opt.budgets);
        ++checked;
        if (!(sizes_ok && engine_fails && brute_fails)) ++failures;
        ordered_json entry;
        entry["group"] = g.spec_string();
        entry["A"] = subset_json(A);
        entry["B"] = subset_json(B);
        entry["fails_to_match"] = engine_fails && brute_fails;
        groups.push_back(std::move(entry));
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["groups_checked"] = checked;
    details["failures"] = failures;
    details["cases"] = groups;
    col.add(2, "non-prime groups: canonical counterexample pair fails to match", failures == 0,
            elapsed, "every presentation of order <= 16 without the matching property", details);
}

// ---------------------------------------------------------------- criterion 3

void criterion_generator_matchings(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long pairs = 0;
    long long failures = 0;
    Fnv1a digest;
    for (int order = 3; order <= 10; ++order) {
        FiniteAbelianGroup g({order});
        std::vector<long long> all;
        std::vector<long long> generators;
        for (long long i = 0; i < g.order(); ++i) {
            all.push_back(i);
            if (is_generator(g, g.element_at(i))) generators.push_back(i);
        }
        for (int k = 1; k <= 3; ++k) {
            auto as = combos(all, k);
            auto bs = combos(generators, k);
            long long total = static_cast<long long>(as.size()) * static_cast<long long>(bs.size());
            std::vector<char> ok(static_cast<std::size_t>(total), 0);
            parallel_for(total, opt.workers, [&](long long t) {
                auto A = GroupSubset::from_indices(g, as[static_cast<std::size_t>(t / static_cast<long long>(bs.size()))]);
                auto B = GroupSubset::from_indices(g, bs[static_cast<std::size_t>(t % static_cast<long long>(bs.size()))]);
                ok[static_cast<std::size_t>(t)] = find_matching(A, B).matched() ? 1 : 0;
            });
            pairs += total;
            for (long long t = 0; t < total; ++t) {
                if (!ok[static_cast<std::size_t>(t)]) ++failures;
                digest.feed(ok[static_cast<std::size_t>(t)] ? "1" : "0");
            }
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["orders"] = "Z3..Z10";
    details["pairs"] = pairs;
    details["failures"] = failures;
    details["digest"] = hex64(digest.value());
    col.add(3, "cyclic groups: generator-only right sides always match", failures == 0, elapsed,
            "cyclic orders 3..10, B inside the generators, sizes up to 3", details);
}

// ---------------------------------------------------------------- criterion 4

void criterion_local_equivalence(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    std::vector<std::vector<int>> groups{{4}, {6}, {8}, {9}, {2, 2}, {2, 4}};
    long long disagreements = 0;
    long long pairs = 0;
    ordered_json per_group = ordered_json::array();
    for (const auto& moduli : groups) {
        FiniteAbelianGroup g(moduli);
        auto sweep = exhaustive_matchability(g, 3, opt.budgets, opt.workers);
        disagreements += sweep.pairs_total - sweep.agreements;
        pairs += sweep.pairs_total;
        ordered_json entry;
        entry["group"] = g.spec_string();
        entry["pairs"] = sweep.pairs_total;
        entry["matched"] = sweep.matched_count;
        entry["agreements"] = sweep.agreements;
        entry["digest"] = hex64(sweep.digest);
        per_group.push_back(std::move(entry));
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["pairs"] = pairs;
    details["disagreements"] = disagreements;
    details["groups"] = per_group;
    col.add(4, "groups: local matchability agrees with matchability",
            disagreements == 0 && elapsed < 600000, elapsed,
            "Z4,Z6,Z8,Z9,Z2xZ2,Z2xZ4; pairs up to size 3, 0 outside B", details);
}

// ---------------------------------------------------------------- criterion 5

void criterion_group_stabilizers(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long pairs = 0;
    long long failures = 0;
    Fnv1a digest;
    for (const auto& moduli : presentations_up_to(12)) {
        FiniteAbelianGroup g(moduli);
        std::vector<long long> all;
        for (long long i = 0; i < g.order(); ++i) all.push_back(i);
        std::vector<std::vector<long long>> subsets;
        for (int k = 1; k <= 3; ++k)
            for (auto& c : combos(all, k)) subsets.push_back(std::move(c));
        long long total =
            static_cast<long long>(subsets.size()) * static_cast<long long>(subsets.size());
        std::vector<char> ok(static_cast<std::size_t>(total), 0);
        parallel_for(total, opt.workers, [&](long long t) {
            auto A = GroupSubset::from_indices(
                g, subsets[static_cast<std::size_t>(t / static_cast<long long>(subsets.size()))]);
            auto B = GroupSubset::from_indices(
                g, subsets[static_cast<std::size_t>(t % static_cast<long long>(subsets.size()))]);
            auto rec = verify_kneser(A, B);
            bool agree = rec.H.carrier == oracle::brute_stabilizer(rec.C).carrier;
            ok[static_cast<std::size_t>(t)] = (rec.holds && agree) ? 1 : 0;
        });
        pairs += total;
        for (long long t = 0; t < total; ++t) {
            if (!ok[static_cast<std::size_t>(t)]) ++failures;
        }
        digest.feed(g.spec_string());
        digest.feed("|" + std::to_string(total - std::count(ok.begin(), ok.end(), 0)));
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["pairs"] = pairs;
    details["failures"] = failures;
    details["digest"] = hex64(digest.value());
    col.add(5, "groups: sumset stabilizer inequality and stabilizer oracle", failures == 0,
            elapsed, "every presentation of order <= 12; subsets up to size 3", details);
}

// ---------------------------------------------------------------- criterion 6

void criterion_matched_basis_oracle(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long bases = 0;
    long long disagreements = 0;
    Fnv1a digest;
    std::vector<FieldExt> fields{FieldExt(2, 2), FieldExt(3, 2)};
    for (const auto& ext : fields) {
        for (int k = 1; k <= 2; ++k) {
            auto spaces = enumerate_subspaces(ext, k);
            for (const auto& A : spaces) {
                auto a_bases = oracle::enumerate_ordered_bases(A, opt.budgets);
                for (const auto& B : spaces) {
                    for (const auto& a_basis : a_bases) {
                        bool engine = basis_matchable(a_basis, A, B).matchable;
                        bool brute = oracle::brute_basis_matchable(a_basis, A, B, opt.budgets);
                        if (engine != brute) ++disagreements;
                        if (engine) {
                            auto found = find_matched_basis(a_basis, A, B);
                            if (!found.matching || !verify_basis_matching(*found.matching))
                                ++disagreements;
                        }
                        ++bases;
                        digest.feed(engine ? "1" : "0");
                    }
                }
            }
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["fields"] = {"GF(2^2)", "GF(3^2)"};
    details["bases_checked"] = bases;
    details["disagreements"] = disagreements;
    details["digest"] = hex64(digest.value());
    col.add(6, "matched-basis criterion agrees with exhaustive basis search", disagreements == 0,
            elapsed, "GF(2^2) and GF(3^2), all pairs of dimension <= 2, all ordered bases",
            details);
}

// ---------------------------------------------------------------- criterion 7

void criterion_transversals(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long families = 0;
    long long extensions = 0;
    long long failures = 0;
    Fnv1a digest;

    auto check_family = [&](const std::vector<Subspace>& family, const Subspace& ambient) {
        ++families;
        auto cert = free_transversal(family);
        bool rado = rado_condition(family, nullptr);
        bool ok = cert.found == rado;
        if (cert.found) {
            gflin::Mat rows;
            for (std::size_t i = 0; i < family.size(); ++i) {
                if (!family[i].contains(cert.transversal[i])) ok = false;
                rows.push_back(cert.transversal[i].coeffs);
            }
            if (!family.empty() &&
                static_cast<int>(gflin::rref(rows, ambient.ext().characteristic()).size()) !=
                    static_cast<int>(family.size()))
                ok = false;
        } else {
            Subspace total = Subspace::zero_space(ambient.ext());
            for (int j : cert.violating_J) total = sum(total, family[static_cast<std::size_t>(j - 1)]);
            if (total.dim() >= static_cast<int>(cert.violating_J.size())) ok = false;
        }
        if (intersection_condition(family, ambient)) {
            ++extensions;
            auto extended = extend_family(family, ambient);  // self-verifying
            for (std::size_t i = 0; i < family.size(); ++i)
                if (!extended[i].contains(family[i])) ok = false;
        }
        if (!ok) ++failures;
        digest.feed(ok ? "1" : "0");
        digest.feed(cert.found ? "t" : "f");
    };

    // every family over GF(2), ambient degree <= 3, up to 3 members
    for (int n = 1; n <= 3; ++n) {
        FieldExt ext(2, n);
        auto ambient = Subspace::full_space(ext);
        std::vector<Subspace> all;
        for (int k = 0; k <= n; ++k)
            for (auto& s : enumerate_subspaces(ext, k)) all.push_back(std::move(s));
        for (int k = 1; k <= 3; ++k) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
            for (;;) {
                std::vector<Subspace> family;
                for (std::size_t i : pick) family.push_back(all[i]);
                check_family(family, ambient);
                int level = k - 1;
                while (level >= 0 && pick[static_cast<std::size_t>(level)] + 1 == all.size()) {
                    pick[static_cast<std::size_t>(level)] = 0;
                    --level;
                }
                if (level < 0) break;
                ++pick[static_cast<std::size_t>(level)];
            }
        }
    }

    // seeded random families over larger fields
    for (const auto& ext : {FieldExt(2, 4), FieldExt(3, 2)}) {
        SplitMix64 rng(opt.seed * 0x9E3779B97F4A7C15ull + 7 + static_cast<std::uint64_t>(ext.order()));
        auto ambient = Subspace::full_space(ext);
        for (int i = 0; i < 1000; ++i) {
            int k = 1 + static_cast<int>(rng.bounded(3));
            std::vector<Subspace> family;
            for (int j = 0; j < k; ++j) family.push_back(random_subspace(ext, rng, 0));
            check_family(family, ambient);
        }
    }

    long long elapsed = now_ms() - start;
    ordered_json details;
    details["families"] = families;
    details["extensions"] = extensions;
    details["failures"] = failures;
    details["digest"] = hex64(digest.value());
    col.add(7, "free transversals match the dimension condition; family extension is exact",
            failures == 0, elapsed,
            "all families over GF(2) up to degree 3 plus seeded random families", details);
}

// ---------------------------------------------------------------- criterion 8

void criterion_linear_kneser(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long pairs = 0;
    long long failures = 0;
    Fnv1a digest;
    for (const auto& ext : {FieldExt(2, 4), FieldExt(2, 6), FieldExt(3, 2)}) {
        SplitMix64 rng(opt.seed * 0x9E3779B97F4A7C15ull + 8 + static_cast<std::uint64_t>(ext.order()));
        struct Task {
            Subspace A;
            Subspace B;
        };
        std::vector<Task> tasks;
        for (int i = 0; i < 1000; ++i)
            tasks.push_back(Task{random_subspace(ext, rng, 1), random_subspace(ext, rng, 1)});
        std::vector<char> ok(tasks.size(), 0);
        parallel_for(static_cast<long long>(tasks.size()), opt.workers, [&](long long t) {
            const auto& task = tasks[static_cast<std::size_t>(t)];
            auto rec = verify_linear_kneser(task.A, task.B);
            bool agree = rec.H == oracle::brute_stabilizer(rec.C);
            ok[static_cast<std::size_t>(t)] = (rec.holds && agree) ? 1 : 0;
        });
        pairs += static_cast<long long>(tasks.size());
        for (char c : ok) {
            if (!c) ++failures;
            digest.feed(c ? "1" : "0");
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["fields"] = {"GF(2^4)", "GF(2^6)", "GF(3^2)"};
    details["pairs"] = pairs;
    details["failures"] = failures;
    details["digest"] = hex64(digest.value());
    col.add(8, "subspaces: product-span stabilizer inequality and stabilizer oracle",
            failures == 0, elapsed, "1000 seeded nonzero pairs per field", details);
}

// ---------------------------------------------------------------- criterion 9

void criterion_primitive_matched(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long pairs = 0;
    long long failures = 0;
    long long primitive_mismatches = 0;
    ordered_json per_field = ordered_json::array();
    for (const auto& ext : {FieldExt(2, 2), FieldExt(2, 3), FieldExt(3, 2)}) {
        auto outcome = theorem41_check(ext, 2, opt.budgets, opt.workers);
        pairs += outcome.pairs_checked;
        if (!outcome.all_matched) ++failures;
        // prime degree: primitive is the same as excluding 1
        for (int k = 1; k <= std::min(2, ext.degree()); ++k)
            for (const auto& b : enumerate_subspaces(ext, k))
                if (is_primitive(b, opt.budgets).primitive != !b.contains(ext.one()))
                    ++primitive_mismatches;
        ordered_json entry;
        entry["field"] = ext.spec_string();
        entry["pairs"] = outcome.pairs_checked;
        entry["primitive_spaces"] = outcome.primitive_spaces;
        entry["all_matched"] = outcome.all_matched;
        entry["digest"] = hex64(outcome.digest);
        per_field.push_back(std::move(entry));
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["pairs"] = pairs;
    details["failures"] = failures;
    details["primitive_iff_one_excluded_mismatches"] = primitive_mismatches;
    details["fields"] = per_field;
    col.add(9, "primitive right sides are always matched", failures == 0 && primitive_mismatches == 0,
            elapsed, "GF(2^2), GF(2^3), GF(3^2); dimensions up to 2", details);
}

// --------------------------------------------------------------- criterion 10

void criterion_local_linear(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    FieldExt ext(2, 4, {1, 1, 0, 0, 1});  // t^4 + t + 1
    struct Task {
        Subspace A;
        Subspace B;
    };
    std::vector<Task> tasks;
    for (int k = 1; k <= 2; ++k) {
        auto spaces = enumerate_subspaces(ext, k);
        std::vector<Subspace> rights;
        for (const auto& b : spaces)
            if (!b.contains(ext.one())) rights.push_back(b);
        for (const auto& a : spaces)
            for (const auto& b : rights) tasks.push_back(Task{a, b});
    }
    struct Row {
        bool local = false;
        bool matched = false;
        bool reverified = true;
    };
    std::vector<Row> rows(tasks.size());
    parallel_for(static_cast<long long>(tasks.size()), opt.workers, [&](long long t) {
        const auto& task = tasks[static_cast<std::size_t>(t)];
        auto cert = is_locally_matched_linear(task.A, task.B, opt.budgets);
        auto& row = rows[static_cast<std::size_t>(t)];
        row.local = cert.locally_matched;
        row.matched = space_matched(task.A, task.B, opt.budgets).matched;
        for (const auto& h : cert.triggered)
            if (h.ok && !h.reverified) row.reverified = false;
    });
    long long disagreements = 0;
    long long unverified = 0;
    Fnv1a digest;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (rows[i].local != rows[i].matched) ++disagreements;
        if (!rows[i].reverified) ++unverified;
        digest.feed(tasks[i].A.format());
        digest.feed(tasks[i].B.format());
        digest.feed(rows[i].local ? "|1" : "|0");
    }

    // the closing construction: A the degree-2 subfield, B spanned by its
    // generator and t, both verdicts must be false
    auto gf4 = subfield(ext, 2);
    FqElem omega = gf4.basis_elements()[1];  // t^2 + t under this modulus
    auto b_closing = span_of(ext, {omega, ext.gen()});
    bool closing_local = is_locally_matched_linear(gf4, b_closing, opt.budgets).locally_matched;
    bool closing_matched = space_matched(gf4, b_closing, opt.budgets).matched;
    bool closing_ok = !closing_local && !closing_matched;

    long long elapsed = now_ms() - start;
    ordered_json details;
    details["field"] = "GF(2^4)";
    details["modulus"] = ext.modulus_string();
    details["pairs"] = static_cast<long long>(tasks.size());
    details["disagreements"] = disagreements;
    details["unverified_witnesses"] = unverified;
    details["closing_counterexample_false_on_both"] = closing_ok;
    details["digest"] = hex64(digest.value());
    col.add(10, "subspaces: local matchability agrees with matchability",
            disagreements == 0 && unverified == 0 && closing_ok && elapsed < 900000, elapsed,
            "GF(2^4) modulus t^4+t+1; equal dimensions <= 2 with 1 outside B", details);
}

// --------------------------------------------------------------- criterion 11

void criterion_mn_exploration(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long oracle_disagreements = 0;
    ordered_json per_field = ordered_json::array();
    for (int p : {2, 3}) {
        for (int n : {2, 3, 4}) {
            FieldExt ext(p, n);
            auto report = compute_mn(ext, opt.budgets);
            ordered_json entry;
            entry["field"] = ext.spec_string();
            entry["nKL"] = report.nKL;
            entry["mKL"] = report.mKL;
            entry["identity_holds"] = report.identity_holds;
            if (ext.order() <= opt.budgets.oracle_max_field_order) {
                int brute = oracle::brute_mKL(ext, opt.budgets);
                entry["oracle_mKL"] = brute;
                if (brute != report.mKL) ++oracle_disagreements;
            }
            per_field.push_back(std::move(entry));
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["oracle_disagreements"] = oracle_disagreements;
    details["fields"] = per_field;
    // identity_holds values are findings; only oracle agreement gates the pass
    col.add(11, "degree split: max subfield degree plus max primitive dimension (exploration)",
            oracle_disagreements == 0, elapsed, "GF(p^n) for p in {2,3}, n in {2,3,4}", details);
}

// ------------------------------------------------------------------ assembly

std::string render_stream(const VerifyRun& run) {
    std::string out;
    for (const auto& record : run.records) out += render(record, ReportFormat::Json) + "\n";
    for (const auto& c : run.criteria) {
        out += "criterion " + std::to_string(c.id) + " [" + c.name + "]: " +
               (c.pass ? "PASS" : "FAIL") + "\n";
    }
    return out;
}

VerifyRun run_core(const VerifyOptions& options) {
    VerifyRun run;
    Collector col{&run, &options};
    criterion_prime_matchings(col);
    criterion_counterexamples(col);
    criterion_generator_matchings(col);
    criterion_local_equivalence(col);
    criterion_group_stabilizers(col);
    criterion_matched_basis_oracle(col);
    criterion_transversals(col);
    criterion_linear_kneser(col);
    criterion_primitive_matched(col);
    criterion_local_linear(col);
    criterion_mn_exploration(col);
    run.all_pass = std::all_of(run.criteria.begin(), run.criteria.end(),
                               [](const CriterionResult& c) { return c.pass; });
    run.stream = render_stream(run);
    return run;
}

}  // namespace

VerifyRun run_acceptance(const VerifyOptions& options) {
    long long start = now_ms();
    VerifyRun first = run_core(options);
    VerifyOptions other = options;
    other.workers = options.workers == 1 ? 4 : 1;
    VerifyRun second = run_core(other);
    bool identical = first.stream == second.stream;
    long long elapsed = now_ms() - start;

    // nothing worker-dependent may appear here, or the full payload itself
    // would differ across worker counts
    ordered_json details;
    details["runs"] = 2;
    details["bytes"] = static_cast<long long>(first.stream.size());
    details["identical"] = identical;

    VerifyRun run = std::move(first);
    VerdictReport record;
    record.command = "verify.c12";
    record.instance = "two full runs with the same seed and different worker counts";
    record.verdict = identical ? "holds" : "fails";
    record.certificate = details;
    record.seed = options.seed;
    run.records.push_back(record);
    run.criteria.push_back(CriterionResult{
        12, "byte-identical reports across runs and worker counts", identical, elapsed, details});
    run.all_pass = run.all_pass && identical;
    run.stream += render(record, ReportFormat::Json) + "\n";
    run.stream += std::string("criterion 12 [byte-identical reports across runs and worker counts]: ") +
                  (identical ? "PASS" : "FAIL") + "\n";
    return run;
}

namespace {

// ------------------------------------------------------- oracle agreement run

void oracle_matchings(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    std::vector<std::vector<int>> groups{{2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 4}};
    long long checked = 0;
    long long disagreements = 0;
    for (const auto& moduli : groups) {
        FiniteAbelianGroup g(moduli);
        SplitMix64 rng(opt.seed * 0x9E3779B97F4A7C15ull + 101 + static_cast<std::uint64_t>(g.order()));
        std::vector<long long> all;
        for (long long i = 0; i < g.order(); ++i) all.push_back(i);
        for (int k = 1; k <= 3; ++k) {
            auto picks = combos(all, k);
            for (const auto& ai : picks) {
                for (const auto& bi : picks) {
                    auto A = GroupSubset::from_indices(g, ai);
                    auto B = GroupSubset::from_indices(g, bi);
                    ++checked;
                    if (find_matching(A, B).matched() !=
                        oracle::brute_matching(A, B, A, opt.budgets))
                        ++disagreements;
                    // one seeded superset C of A per pair
                    auto c_idx = ai;
                    long long extra = static_cast<long long>(
                        rng.bounded(static_cast<std::uint64_t>(g.order())));
                    c_idx.push_back(extra);
                    auto C = GroupSubset::from_indices(g, c_idx);
                    ++checked;
                    if (find_c_matching(A, B, C).matched() !=
                        oracle::brute_matching(A, B, C, opt.budgets))
                        ++disagreements;
                }
            }
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["instances"] = checked;
    details["disagreements"] = disagreements;
    col.add(101, "matchings and forbidden-set matchings agree with the bijection oracle",
            disagreements == 0, elapsed, "small groups, sizes up to 3, seeded forbidden sets",
            details);
}

void oracle_stabilizers(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long checked = 0;
    long long disagreements = 0;
    for (const auto& moduli : presentations_up_to(12)) {
        FiniteAbelianGroup g(moduli);
        std::vector<long long> all;
        for (long long i = 0; i < g.order(); ++i) all.push_back(i);
        for (int k = 1; k <= 3; ++k)
            for (const auto& ci : combos(all, k)) {
                auto C = GroupSubset::from_indices(g, ci);
                ++checked;
                if (!(kneser_stabilizer(C).carrier == oracle::brute_stabilizer(C).carrier))
                    ++disagreements;
            }
    }
    for (const auto& ext : {FieldExt(2, 3), FieldExt(2, 4), FieldExt(3, 2)}) {
        SplitMix64 rng(opt.seed * 0x9E3779B97F4A7C15ull + 102 + static_cast<std::uint64_t>(ext.order()));
        for (int i = 0; i < 200; ++i) {
            auto v = random_subspace(ext, rng, 1);
            ++checked;
            if (!(stabilizer_subfield(v) == oracle::brute_stabilizer(v))) ++disagreements;
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["instances"] = checked;
    details["disagreements"] = disagreements;
    col.add(102, "stabilizers agree with elementwise oracles in both settings", disagreements == 0,
            elapsed, "group subsets up to size 3; seeded random subspaces", details);
}

void oracle_matched_bases(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long checked = 0;
    long long disagreements = 0;
    for (const auto& ext : {FieldExt(2, 2), FieldExt(3, 2)}) {
        for (int k = 1; k <= 2; ++k) {
            auto spaces = enumerate_subspaces(ext, k);
            for (const auto& a : spaces)
                for (const auto& b : spaces) {
                    ++checked;
                    if (space_matched(a, b, opt.budgets).matched !=
                        oracle::brute_matched_basis(a, b, opt.budgets))
                        ++disagreements;
                }
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["instances"] = checked;
    details["disagreements"] = disagreements;
    col.add(103, "space-level matchedness agrees with the all-bases oracle", disagreements == 0,
            elapsed, "GF(2^2) and GF(3^2), all pairs of dimension <= 2", details);
}

void oracle_mkl(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long disagreements = 0;
    ordered_json fields = ordered_json::array();
    for (int p : {2, 3}) {
        for (int n : {2, 3, 4}) {
            FieldExt ext(p, n);
            auto report = compute_mn(ext, opt.budgets);
            int brute = oracle::brute_mKL(ext, opt.budgets);
            if (report.mKL != brute) ++disagreements;
            ordered_json entry;
            entry["field"] = ext.spec_string();
            entry["mKL"] = report.mKL;
            entry["oracle_mKL"] = brute;
            fields.push_back(std::move(entry));
        }
    }
    long long elapsed = now_ms() - start;
    ordered_json details;
    details["fields"] = fields;
    details["disagreements"] = disagreements;
    col.add(104, "maximal primitive dimension agrees with the subspace-lattice oracle",
            disagreements == 0, elapsed, "GF(p^n) for p in {2,3}, n in {2,3,4}", details);
}

void oracle_local_both(Collector& col) {
    long long start = now_ms();
    const VerifyOptions& opt = *col.options;
    long long checked = 0;
    long long disagreements = 0;

    for (const auto& moduli : std::vector<std::vector<int>>{{4}, {6}, {8}, {2, 2}}) {
        FiniteAbelianGroup g(moduli);
        std::vector<long long> all;
        std::vector<long long> nonzero;
        for (long long i = 0; i < g.order(); ++i) {
            all.push_back(i);
            if (i != 0) nonzero.push_back(i);
        }
        for (int k = 1; k <= 3; ++k)
            for (const auto& ai : combos(all, k))
                for (const auto& bi : combos(nonzero, k)) {
                    auto A = GroupSubset::from_indices(g, ai);
                    auto B = GroupSubset::from_indices(g, bi);
                    ++checked;
                    if (is_locally_matched(A, B, opt.budgets).locally_matched !=
                        find_matching(A, B).matched())
                        ++disagreements;
                }
    }

    for (const auto& ext : {FieldExt(2, 2), FieldExt(3, 2), FieldExt(2, 4)}) {
        for (int k = 1; k <= 2; ++k) {
            if (k > ext.degree()) continue;
            auto spaces = enumerate_subspaces(ext, k);
            for (const auto& a : spaces)
                for (const auto& b : spaces) {
                    if (b.contains(ext.one())) continue;
                    auto cert = is_locally_matched_linear(a, b, opt.budgets);
                    ++checked;
                    if (cert.locally_matched != space_matched(a, b, opt.budgets).matched)
                        ++disagreements;
                    // negative branches cross-checked by exhaustive search
                    for (const auto& h : cert.triggered) {
                        if (h.ok || h.h_cap_b.dim() != 1) continue;
                        ++checked;
                        if (oracle::brute_exists_A_matched_subspace(a, h.h_cap_b, opt.budgets))
                            ++disagreements;
                    }
                }
        }
    }

    long long elapsed = now_ms() - start;
    ordered_json details;
    details["instances"] = checked;
    details["disagreements"] = disagreements;
    col.add(105, "local matchability agrees with matchability in both settings",
            disagreements == 0, elapsed,
            "small groups and fields; exhaustive witness search on negatives", details);
}

}  // namespace

VerifyRun run_oracle_agreement(const VerifyOptions& options) {
    VerifyRun run;
    Collector col{&run, &options};
    oracle_matchings(col);
    oracle_stabilizers(col);
    oracle_matched_bases(col);
    oracle_mkl(col);
    oracle_local_both(col);
    run.all_pass = std::all_of(run.criteria.begin(), run.criteria.end(),
                               [](const CriterionResult& c) { return c.pass; });
    run.stream = render_stream(run);
    return run;
}

}  // namespace matchkit
