#include <doctest.h>

#include "matchkit/group.hpp"
#include "matchkit/util.hpp"

using namespace matchkit;

TEST_CASE("group construction and validation") {
    FiniteAbelianGroup g({2, 4});
    CHECK(g.order() == 8);
    CHECK(g.factors() == 2);
    CHECK(g.spec_string() == "Z2xZ4");
    CHECK_THROWS_AS(FiniteAbelianGroup({1}), DomainError);
    CHECK_THROWS_AS(FiniteAbelianGroup({}), DomainError);
}

TEST_CASE("componentwise addition") {
    FiniteAbelianGroup z4({4});
    CHECK(z4.add(GroupElement{{3}}, GroupElement{{2}}) == GroupElement{{1}});

    FiniteAbelianGroup z2z2({2, 2});
    CHECK(z2z2.add(GroupElement{{1, 0}}, GroupElement{{1, 1}}) == GroupElement{{0, 1}});

    for (long long i = 0; i < z2z2.order(); ++i) {
        auto g = z2z2.element_at(i);
        CHECK(z2z2.add(g, z2z2.zero()) == g);
        CHECK(z2z2.add(g, z2z2.negate(g)) == z2z2.zero());
    }

    CHECK_THROWS_AS(z4.add(GroupElement{{1, 0}}, GroupElement{{1}}), StructuralError);
    CHECK_THROWS_AS(z4.index_of(GroupElement{{5}}), StructuralError);
}

TEST_CASE("index round trip follows coordinate order") {
    FiniteAbelianGroup g({3, 4});
    for (long long i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
    // index order is lexicographic on coords with the first factor leading
    CHECK(g.index_of(GroupElement{{0, 3}}) < g.index_of(GroupElement{{1, 0}}));
}

TEST_CASE("sumset examples") {
    FiniteAbelianGroup z6({6});
    auto a = parse_subset(z6, "{0,3}");
    CHECK(sumset(a, a) == a);

    FiniteAbelianGroup z4({4});
    auto one = parse_subset(z4, "{1}");
    CHECK(sumset(one, one) == parse_subset(z4, "{2}"));

    auto b = parse_subset(z6, "{1,2,5}");
    auto zero = parse_subset(z6, "{0}");
    CHECK(sumset(zero, b) == b);
    CHECK(sumset(b, zero) == b);

    CHECK_THROWS_AS(sumset(a, parse_subset(z4, "{1}")), StructuralError);
}

TEST_CASE("sumset properties on random subsets") {
    SplitMix64 rng(17);
    FiniteAbelianGroup g({2, 6});
    for (int it = 0; it < 200; ++it) {
        std::vector<long long> ai;
        std::vector<long long> bi;
        for (long long i = 0; i < g.order(); ++i) {
            if (rng.bounded(3) == 0) ai.push_back(i);
            if (rng.bounded(3) == 0) bi.push_back(i);
        }
        if (ai.empty()) ai.push_back(static_cast<long long>(rng.bounded(12)));
        if (bi.empty()) bi.push_back(static_cast<long long>(rng.bounded(12)));
        auto a = GroupSubset::from_indices(g, ai);
        auto b = GroupSubset::from_indices(g, bi);
        auto ab = sumset(a, b);
        CHECK(ab == sumset(b, a));
        CHECK(ab.size() <= a.size() * b.size());
        CHECK(sumset(a, GroupSubset::from_indices(g, {0})).size() == a.size());
    }
}

TEST_CASE("subgroup enumeration") {
    auto z4 = subgroups(FiniteAbelianGroup({4}));
    CHECK(z4.size() == 3);

    auto z5 = subgroups(FiniteAbelianGroup({5}));
    CHECK(z5.size() == 2);

    auto z6 = subgroups(FiniteAbelianGroup({6}));
    CHECK(z6.size() == 4);

    auto klein = subgroups(FiniteAbelianGroup({2, 2}));
    CHECK(klein.size() == 5);
    int order2 = 0;
    for (const auto& h : klein)
        if (h.carrier.size() == 2) ++order2;
    CHECK(order2 == 3);
}

TEST_CASE("subgroup properties") {
    for (const auto& moduli : std::vector<std::vector<int>>{{8}, {9}, {2, 4}, {12}, {2, 2, 2}}) {
        FiniteAbelianGroup g(moduli);
        auto subs = subgroups(g);
        bool saw_trivial = false;
        bool saw_full = false;
        for (const auto& h : subs) {
            CHECK(is_subgroup(h.carrier));
            CHECK(g.order() % static_cast<long long>(h.carrier.size()) == 0);
            CHECK(sumset(h.carrier, h.carrier) == h.carrier);
            std::vector<long long> negated;
            for (long long x : h.carrier.indices()) negated.push_back(g.negate_index(x));
            CHECK(GroupSubset::from_indices(g, negated) == h.carrier);
            if (h.carrier.size() == 1) saw_trivial = true;
            if (static_cast<long long>(h.carrier.size()) == g.order()) saw_full = true;
        }
        CHECK(saw_trivial);
        CHECK(saw_full);
    }
}

TEST_CASE("subgroup enumeration respects the order bound") {
    CHECK_THROWS_AS(subgroups(FiniteAbelianGroup({1024}), 512), ResourceError);
}

TEST_CASE("generator test") {
    FiniteAbelianGroup z6({6});
    CHECK(is_generator(z6, GroupElement{{5}}));
    CHECK_FALSE(is_generator(z6, GroupElement{{2}}));
    CHECK_FALSE(is_generator(z6, GroupElement{{0}}));

    FiniteAbelianGroup z7({7});
    for (long long i = 1; i < 7; ++i) CHECK(is_generator(z7, z7.element_at(i)));

    CHECK_THROWS_AS(is_generator(FiniteAbelianGroup({2, 2}), GroupElement{{1, 0}}), DomainError);
}

TEST_CASE("group spec parsing") {
    CHECK(parse_group("Z4").spec_string() == "Z4");
    CHECK(parse_group("Z2xZ2").spec_string() == "Z2xZ2");
    CHECK(parse_group("Z2XZ4").spec_string() == "Z2xZ4");

    CHECK_THROWS_AS(parse_group("Q8"), ParseError);
    CHECK_THROWS_AS(parse_group("Z1"), ParseError);
    CHECK_THROWS_AS(parse_group("Z4x"), ParseError);
    try {
        parse_group("Z4y3");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("subset parsing round trip") {
    FiniteAbelianGroup z4({4});
    auto s = parse_subset(z4, "{0,2}");
    CHECK(s.format() == "{0,2}");
    CHECK(parse_subset(z4, "2,0") == s);
    CHECK(parse_subset(z4, "{(2),(0)}") == s);

    FiniteAbelianGroup klein({2, 2});
    auto t = parse_subset(klein, "{(0,1),(1,0)}");
    CHECK(t.format() == "{(0,1),(1,0)}");
    CHECK(parse_subset(klein, t.format()) == t);

    CHECK_THROWS_AS(parse_subset(z4, "{}"), ParseError);
    CHECK_THROWS_AS(parse_subset(z4, "{0,4}"), ParseError);
    CHECK_THROWS_AS(parse_subset(klein, "0,1"), ParseError);
    CHECK_THROWS_AS(parse_subset(z4, "{0,2} junk"), ParseError);
}
