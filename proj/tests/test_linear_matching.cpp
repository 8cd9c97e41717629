#include <doctest.h>

#include "matchkit/linear_matching.hpp"
#include "matchkit/oracle.hpp"
#include "matchkit/util.hpp"

using namespace matchkit;

namespace {

const FieldExt kGf4(2, 2);
const FieldExt kGf9(3, 2);
const FieldExt kGf16(2, 4);

Subspace rows(const FieldExt& ext, const std::vector<const char*>& polys) {
    std::vector<FqElem> v;
    for (const char* p : polys) v.push_back(ext.parse_element(p));
    return span_of(ext, v);
}

}  // namespace

TEST_CASE("matched-basis criterion on worked instances") {
    auto a = rows(kGf4, {"1"});
    auto b = rows(kGf4, {"t"});
    CHECK(basis_matchable({kGf4.one()}, a, b).matchable);

    auto same = basis_matchable({kGf4.one()}, a, a);
    CHECK_FALSE(same.matchable);
    CHECK(same.violating_J == std::vector<int>{1});

    auto gf4_in_16 = subfield(kGf16, 2);
    auto omega = kGf16.parse_element("t^2+t");
    auto crit = basis_matchable({kGf16.one(), omega}, gf4_in_16, gf4_in_16);
    CHECK_FALSE(crit.matchable);
    CHECK(crit.violating_J == std::vector<int>{1});

    CHECK_THROWS_AS(basis_matchable({kGf4.gen()}, a, b), DomainError);  // not a basis of A
}

TEST_CASE("free transversal worked instances") {
    auto e1 = rows(kGf4, {"1"});
    auto e2 = rows(kGf4, {"t"});
    auto cert = free_transversal({e1, e2});
    REQUIRE(cert.found);
    CHECK(cert.transversal == std::vector<FqElem>{kGf4.one(), kGf4.gen()});

    auto repeat = free_transversal({e1, e1});
    CHECK_FALSE(repeat.found);
    CHECK(repeat.violating_J == std::vector<int>{1, 2});

    auto plane = rows(kGf4, {"1", "t"});
    auto nested = free_transversal({plane, e1});
    REQUIRE(nested.found);
    CHECK(nested.transversal == std::vector<FqElem>{kGf4.gen(), kGf4.one()});

    CHECK(free_transversal({}).found);
}

TEST_CASE("transversal existence equals the dimension condition exhaustively") {
    for (int n = 1; n <= 3; ++n) {
        FieldExt ext(2, n);
        std::vector<Subspace> all;
        for (int k = 0; k <= n; ++k)
            for (auto& s : enumerate_subspaces(ext, k)) all.push_back(std::move(s));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j) {
                std::vector<Subspace> family{all[i], all[j]};
                auto cert = free_transversal(family);
                CHECK(cert.found == rado_condition(family, nullptr));
            }
    }
}

TEST_CASE("family extension achieves exact intersection dimensions") {
    // two lines stay in place
    auto e1 = rows(kGf4, {"1"});
    auto e2 = rows(kGf4, {"t"});
    auto ext2 = extend_family({e1, e2}, Subspace::full_space(kGf4));
    CHECK(ext2[0] == e1);
    CHECK(ext2[1] == e2);

    // two zero spaces become distinct lines
    auto z = Subspace::zero_space(kGf4);
    auto ext0 = extend_family({z, z}, Subspace::full_space(kGf4));
    CHECK(ext0[0].dim() == 1);
    CHECK(ext0[1].dim() == 1);
    CHECK(intersect(ext0[0], ext0[1]).dim() == 0);

    // three coordinate lines in degree 3 become planes with a clean table
    FieldExt gf8(2, 3);
    auto f1 = rows(gf8, {"1"});
    auto f2 = rows(gf8, {"t"});
    auto f3 = rows(gf8, {"t^2"});
    auto planes = extend_family({f1, f2, f3}, Subspace::full_space(gf8));
    for (const auto& p : planes) CHECK(p.dim() == 2);
    CHECK(intersect(planes[0], planes[1]).dim() == 1);
    CHECK(intersect(planes[0], planes[2]).dim() == 1);
    CHECK(intersect(planes[1], planes[2]).dim() == 1);
    CHECK(intersect(intersect(planes[0], planes[1]), planes[2]).dim() == 0);

    // precondition violations name the offending index set
    auto full = Subspace::full_space(kGf4);
    CHECK_THROWS_AS(extend_family({full}, full), DomainError);
}

TEST_CASE("matched basis construction on worked instances") {
    auto a = rows(kGf4, {"1"});
    auto b = rows(kGf4, {"t"});
    auto found = find_matched_basis({kGf4.one()}, a, b);
    REQUIRE(found.matching.has_value());
    CHECK(found.matching->b_basis == std::vector<FqElem>{kGf4.gen()});
    CHECK(verify_basis_matching(*found.matching));

    auto a9 = rows(kGf9, {"1"});
    auto b9 = rows(kGf9, {"t"});
    auto two = kGf9.make({2, 0});
    auto found9 = find_matched_basis({two}, a9, b9);
    REQUIRE(found9.matching.has_value());
    CHECK(found9.matching->b_basis == std::vector<FqElem>{kGf9.gen()});

    auto fail = find_matched_basis({kGf4.one()}, a, a);
    CHECK_FALSE(fail.matching.has_value());
    CHECK(fail.violating_J == std::vector<int>{1});
}

TEST_CASE("criterion equals construction equals exhaustive search") {
    for (const auto& ext : {kGf4, kGf9}) {
        for (int k = 1; k <= 2; ++k) {
            for (const auto& a : enumerate_subspaces(ext, k)) {
                auto bases = oracle::enumerate_ordered_bases(a);
                for (const auto& b : enumerate_subspaces(ext, k)) {
                    for (const auto& basis : bases) {
                        bool criterion = basis_matchable(basis, a, b).matchable;
                        CHECK(criterion == oracle::brute_basis_matchable(basis, a, b));
                        auto constructed = find_matched_basis(basis, a, b);
                        CHECK(criterion == constructed.matching.has_value());
                        if (constructed.matching) CHECK(verify_basis_matching(*constructed.matching));
                    }
                }
            }
        }
    }
}

TEST_CASE("space-level matchedness on worked instances") {
    CHECK(space_matched(rows(kGf4, {"1"}), rows(kGf4, {"t"})).matched);
    CHECK(space_matched(rows(kGf4, {"t"}), rows(kGf4, {"t"})).matched);

    auto gf4_in_16 = subfield(kGf16, 2);
    auto res = space_matched(gf4_in_16, gf4_in_16);
    CHECK_FALSE(res.matched);
    CHECK(res.failing_S == std::vector<FqElem>{kGf16.one()});
}

TEST_CASE("space-level matchedness agrees with the all-bases oracle") {
    for (const auto& ext : {kGf4, kGf9}) {
        for (int k = 1; k <= 2; ++k)
            for (const auto& a : enumerate_subspaces(ext, k))
                for (const auto& b : enumerate_subspaces(ext, k))
                    CHECK(space_matched(a, b).matched == oracle::brute_matched_basis(a, b));
    }
    // degree 3 including the full space
    FieldExt gf8(2, 3);
    for (int k = 1; k <= 3; ++k)
        for (const auto& a : enumerate_subspaces(gf8, k))
            for (const auto& b : enumerate_subspaces(gf8, k))
                CHECK(space_matched(a, b).matched == oracle::brute_matched_basis(a, b));
}

TEST_CASE("the A-matched criterion is sufficient for the literal statement") {
    SplitMix64 rng(808);
    for (const auto& ext : {kGf4, FieldExt(2, 3), kGf9}) {
        auto spaces_by_dim = [&](int k) { return enumerate_subspaces(ext, k); };
        for (int it = 0; it < 60; ++it) {
            int ka = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(ext.degree())));
            auto all_a = spaces_by_dim(ka);
            const auto& a = all_a[rng.bounded(all_a.size())];
            int m = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(ka)));
            auto subs = enumerate_subspaces_within(a, m);
            const auto& atil = subs[rng.bounded(subs.size())];
            auto all_b = spaces_by_dim(m);
            const auto& btil = all_b[rng.bounded(all_b.size())];
            if (is_A_matched(atil, btil, a)) CHECK(oracle::brute_is_A_matched(atil, btil, a));
        }
    }
}

TEST_CASE("verdicts are scalar invariant") {
    SplitMix64 rng(5150);
    FieldExt ext = kGf9;
    for (int it = 0; it < 100; ++it) {
        int k = 1 + static_cast<int>(rng.bounded(2));
        auto spaces = enumerate_subspaces(ext, k);
        const auto& a = spaces[rng.bounded(spaces.size())];
        const auto& b = spaces[rng.bounded(spaces.size())];
        auto basis = a.basis_elements();
        bool before = basis_matchable(basis, a, b).matchable;
        // multiply one basis vector by a nonzero scalar
        auto scaled = basis;
        scaled[rng.bounded(scaled.size())] =
            ext.scalar_mul(2, scaled[rng.bounded(scaled.size())]);
        if (span_of(ext, scaled) != a) continue;  // scaling a repeated pick may degenerate
        CHECK(basis_matchable(scaled, a, b).matchable == before);
    }
}

TEST_CASE("A-matched subspaces on worked instances") {
    CHECK(is_A_matched(Subspace::zero_space(kGf4), Subspace::zero_space(kGf4),
                       rows(kGf4, {"t"})));

    auto w_line = rows(kGf4, {"t"});
    CHECK(is_A_matched(w_line, w_line, w_line));

    auto gf4_in_16 = subfield(kGf16, 2);
    auto omega_line = span_of(kGf16, {kGf16.parse_element("t^2+t")});
    CHECK_FALSE(is_A_matched(omega_line, omega_line, gf4_in_16));

    CHECK_THROWS_AS(is_A_matched(rows(kGf4, {"1"}), rows(kGf4, {"1"}), rows(kGf4, {"t"})),
                    DomainError);
}

TEST_CASE("A_b computation") {
    auto w_line = rows(kGf4, {"t"});
    CHECK(compute_Ab(w_line, kGf4.one()) == w_line);
    CHECK(compute_Ab(w_line, kGf4.gen()) == Subspace::zero_space(kGf4));

    auto gf4_in_16 = subfield(kGf16, 2);
    CHECK(compute_Ab(gf4_in_16, kGf16.parse_element("t^2+t")) == gf4_in_16);
    CHECK_THROWS_AS(compute_Ab(w_line, kGf4.zero()), DomainError);
}

TEST_CASE("linear local matchability on worked instances") {
    auto w_line = rows(kGf4, {"t"});
    auto vac = is_locally_matched_linear(w_line, w_line);
    CHECK(vac.locally_matched);
    CHECK(vac.triggered.empty());

    // the closing construction: A the degree-2 subfield, B = <omega, t>
    auto gf4_in_16 = subfield(kGf16, 2);
    auto omega = kGf16.parse_element("t^2+t");
    auto b_closing = span_of(kGf16, {omega, kGf16.gen()});
    auto closing = is_locally_matched_linear(gf4_in_16, b_closing);
    CHECK_FALSE(closing.locally_matched);
    REQUIRE(closing.triggered.size() == 1);
    CHECK(closing.triggered[0].subfield_degree == 2);
    CHECK(closing.triggered[0].h_cap_b == span_of(kGf16, {omega}));
    CHECK_FALSE(closing.triggered[0].ok);

    auto a3 = rows(kGf16, {"1", "t^2+t", "t"});
    auto b3 = rows(kGf16, {"t^2+t", "t", "t^3"});
    auto pos = is_locally_matched_linear(a3, b3);
    CHECK(pos.locally_matched);
    REQUIRE(pos.triggered.size() == 1);
    CHECK(pos.triggered[0].subfield_degree == 2);
    CHECK(pos.triggered[0].ok);
    REQUIRE(pos.triggered[0].a_tilde.has_value());
    CHECK(pos.triggered[0].reverified);
    CHECK(is_A_matched(*pos.triggered[0].a_tilde, pos.triggered[0].h_cap_b, a3));
}

TEST_CASE("negative local verdicts admit no witness at all (exhaustive)") {
    // every dimension-1 triggered failure must be certified by the absence of
    // any A-matched subspace
    for (int k = 1; k <= 2; ++k) {
        for (const auto& a : enumerate_subspaces(kGf16, k)) {
            for (const auto& b : enumerate_subspaces(kGf16, k)) {
                if (b.contains(kGf16.one())) continue;
                auto cert = is_locally_matched_linear(a, b);
                for (const auto& t : cert.triggered) {
                    if (t.ok || t.h_cap_b.dim() != 1) continue;
                    CHECK_FALSE(oracle::brute_exists_A_matched_subspace(a, t.h_cap_b));
                }
            }
        }
    }
}

TEST_CASE("primitive subspaces") {
    CHECK(is_primitive(rows(kGf4, {"t"})).primitive);
    auto with_one = is_primitive(rows(kGf4, {"1", "t"}));
    CHECK_FALSE(with_one.primitive);
    CHECK(*with_one.witness == kGf4.one());

    auto complement = span_of(kGf16, {kGf16.gen(), kGf16.parse_element("t^3")});
    CHECK(is_primitive(complement).primitive);
    CHECK_FALSE(is_primitive(subfield(kGf16, 2)).primitive);
}

TEST_CASE("degree split reports") {
    auto r4 = compute_mn(kGf4);
    CHECK(r4.nKL == 1);
    CHECK(r4.mKL == 1);
    CHECK(r4.identity_holds);

    auto r8 = compute_mn(FieldExt(2, 3));
    CHECK(r8.nKL == 1);
    CHECK(r8.mKL == 2);
    CHECK(r8.identity_holds);

    auto r16 = compute_mn(kGf16);
    CHECK(r16.nKL == 2);
    CHECK(r16.mKL == 2);
    CHECK(r16.identity_holds);
    CHECK(is_primitive(r16.primitive_witness).primitive);

    auto r9 = compute_mn(kGf9);
    CHECK(r9.nKL == 1);
    CHECK(r9.mKL == 1);
    CHECK(r9.identity_holds);
}

TEST_CASE("degree split agrees with the subspace-lattice oracle") {
    for (const auto& ext : {FieldExt(2, 2), FieldExt(2, 3), FieldExt(2, 4), FieldExt(3, 2),
                            FieldExt(3, 3)}) {
        CHECK(compute_mn(ext).mKL == oracle::brute_mKL(ext));
    }
}

TEST_CASE("primitive right sides are always matched (small sweeps)") {
    auto o4 = theorem41_check(kGf4, 1);
    CHECK(o4.pairs_checked == 6);  // 3 lines x 2 primitive lines
    CHECK(o4.all_matched);

    auto o9 = theorem41_check(kGf9, 1);
    CHECK(o9.all_matched);

    auto o8 = theorem41_check(FieldExt(2, 3), 2);
    CHECK(o8.all_matched);
}

TEST_CASE("subspace parsing") {
    auto v = parse_subspace(kGf16, "1; t^2+t");
    CHECK(v == subfield(kGf16, 2));
    auto w = parse_subspace(kGf16, "0,1,1,0");
    CHECK(w == span_of(kGf16, {kGf16.parse_element("t^2+t")}));
    CHECK(parse_subspace(kGf16, "0").dim() == 0);
    CHECK_THROWS_AS(parse_subspace(kGf16, "1,0"), ParseError);
    CHECK_THROWS_AS(parse_subspace(kGf16, ""), ParseError);
}
