#include <doctest.h>

#include "matchkit/oracle.hpp"

using namespace matchkit;

TEST_CASE("bijection oracle") {
    FiniteAbelianGroup z5({5});
    auto a = parse_subset(z5, "1,2");
    CHECK(oracle::brute_matching(a, a, a));

    FiniteAbelianGroup z4({4});
    auto a4 = parse_subset(z4, "0,2");
    auto b4 = parse_subset(z4, "1,2");
    CHECK_FALSE(oracle::brute_matching(a4, b4, a4));

    // singletons: a single sum decides
    auto s = parse_subset(z4, "1");
    auto t = parse_subset(z4, "3");
    CHECK(oracle::brute_matching(s, t, s));       // 1+3=0 not in {1}
    CHECK_FALSE(oracle::brute_matching(s, s, parse_subset(z4, "2")));  // 1+1=2 forbidden

    FiniteAbelianGroup z20({20});
    std::vector<long long> big{0, 1, 2, 3, 4, 5, 6, 7, 8};
    auto wide = GroupSubset::from_indices(z20, big);
    CHECK_THROWS_AS(oracle::brute_matching(wide, wide, wide), ResourceError);
}

TEST_CASE("group stabilizer oracle") {
    FiniteAbelianGroup z6({6});
    CHECK(oracle::brute_stabilizer(parse_subset(z6, "0,3")).carrier == parse_subset(z6, "0,3"));
    auto full6 = parse_subset(z6, "0,1,2,3,4,5");
    CHECK(oracle::brute_stabilizer(full6).carrier == full6);
}

TEST_CASE("field stabilizer oracle on worked instances") {
    FieldExt gf4(2, 2);
    auto w_line = span_of(gf4, {gf4.gen()});
    CHECK(oracle::brute_stabilizer(w_line) == subfield(gf4, 1));
    CHECK(oracle::brute_stabilizer(Subspace::full_space(gf4)) == Subspace::full_space(gf4));
}

TEST_CASE("matched-basis oracle on worked instances") {
    FieldExt gf4(2, 2);
    auto one = span_of(gf4, {gf4.one()});
    auto w = span_of(gf4, {gf4.gen()});
    CHECK(oracle::brute_matched_basis(one, w));
    CHECK_FALSE(oracle::brute_matched_basis(one, one));
    CHECK_FALSE(oracle::brute_matched_basis(Subspace::full_space(gf4),
                                            Subspace::full_space(gf4)));  // 1 in B
}

TEST_CASE("literal A-matched oracle") {
    FieldExt gf16(2, 4);
    auto gf4_in_16 = subfield(gf16, 2);
    auto omega_line = span_of(gf16, {gf16.parse_element("t^2+t")});
    CHECK_FALSE(oracle::brute_is_A_matched(omega_line, omega_line, gf4_in_16));
    auto t2_line = span_of(gf16, {gf16.parse_element("t^2")});
    auto a3 = span_of(gf16, {gf16.one(), gf16.parse_element("t^2+t"), gf16.gen()});
    CHECK(oracle::brute_is_A_matched(t2_line, omega_line, a3));
}

TEST_CASE("max primitive dimension oracle") {
    CHECK(oracle::brute_mKL(FieldExt(2, 2)) == 1);
    CHECK(oracle::brute_mKL(FieldExt(2, 3)) == 2);
    CHECK(oracle::brute_mKL(FieldExt(3, 2)) == 1);
    CHECK_THROWS_AS(oracle::brute_mKL(FieldExt(2, 10)), ResourceError);
}

TEST_CASE("ordered basis enumeration counts") {
    FieldExt gf4(2, 2);
    CHECK(oracle::enumerate_ordered_bases(Subspace::full_space(gf4)).size() == 6);  // (4-1)(4-2)
    FieldExt gf9(3, 2);
    CHECK(oracle::enumerate_ordered_bases(Subspace::full_space(gf9)).size() == 48);  // (9-1)(9-3)
}
