#include <doctest.h>

#include "matchkit/oracle.hpp"
#include "matchkit/subspace.hpp"
#include "matchkit/util.hpp"

using namespace matchkit;

namespace {

Subspace rand_space(const FieldExt& ext, SplitMix64& rng, int min_dim = 0) {
    for (;;) {
        int d = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(ext.degree() + 1)));
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

}  // namespace

TEST_CASE("span canonicality") {
    FieldExt gf16(2, 4);
    auto v1 = span_of(gf16, {gf16.parse_element("t^2+t"), gf16.parse_element("t")});
    auto v2 = span_of(gf16, {gf16.parse_element("t^2"), gf16.parse_element("t^2+t")});
    CHECK(v1 == v2);  // same space, different generators, identical matrices
    CHECK(span_of(gf16, v1.basis_elements()) == v1);
}

TEST_CASE("sum and intersection basics") {
    FieldExt gf4(2, 2);
    auto one = span_of(gf4, {gf4.one()});
    auto w = span_of(gf4, {gf4.gen()});
    CHECK(sum(one, w) == Subspace::full_space(gf4));
    CHECK(sum(one, Subspace::zero_space(gf4)) == one);
    CHECK(intersect(one, one) == one);

    FieldExt gf16(2, 4);
    auto gf4_in_16 = subfield(gf16, 2);
    auto t_line = span_of(gf16, {gf16.gen()});
    CHECK(intersect(gf4_in_16, t_line) == Subspace::zero_space(gf16));
}

TEST_CASE("inclusion-exclusion identity on random pairs") {
    for (const auto& ext : {FieldExt(2, 4), FieldExt(3, 2)}) {
        SplitMix64 rng(7 + static_cast<std::uint64_t>(ext.order()));
        for (int it = 0; it < 1000; ++it) {
            auto v = rand_space(ext, rng);
            auto w = rand_space(ext, rng);
            CHECK(sum(v, w).dim() == v.dim() + w.dim() - intersect(v, w).dim());
        }
    }
}

TEST_CASE("product spans") {
    FieldExt gf4(2, 2);
    auto one = span_of(gf4, {gf4.one()});
    CHECK(product_span(one, one) == one);
    auto w = span_of(gf4, {gf4.gen()});
    CHECK(product_span(w, w) == span_of(gf4, {gf4.make({1, 1})}));

    FieldExt gf16(2, 4);
    auto gf4_in_16 = subfield(gf16, 2);
    CHECK(product_span(gf4_in_16, gf4_in_16) == gf4_in_16);
}

TEST_CASE("product span is basis independent") {
    FieldExt ext(2, 4);
    SplitMix64 rng(99);
    for (int it = 0; it < 200; ++it) {
        auto v = rand_space(ext, rng, 1);
        auto w = rand_space(ext, rng, 1);
        auto expected = product_span(v, w);
        // regenerate v from random combinations of its basis
        std::vector<FqElem> mixed;
        auto basis = v.basis_elements();
        for (std::size_t i = 0; i < basis.size() + 2; ++i) {
            auto acc = ext.zero();
            for (const auto& b : basis)
                acc = ext.add(acc, ext.scalar_mul(static_cast<int>(rng.bounded(2)), b));
            mixed.push_back(acc);
        }
        auto v2 = span_of(ext, mixed);
        if (v2 == v) CHECK(product_span(v2, w) == expected);
    }
}

TEST_CASE("scaling") {
    FieldExt gf4(2, 2);
    auto w_line = span_of(gf4, {gf4.gen()});
    CHECK(scale_inv(gf4.one(), w_line) == w_line);
    CHECK(scale_inv(gf4.gen(), w_line) == span_of(gf4, {gf4.one()}));
    auto full = Subspace::full_space(gf4);
    CHECK(scale_inv(gf4.gen(), full) == full);
    CHECK_THROWS_AS(scale_inv(gf4.zero(), w_line), DomainError);

    // invariance under nonzero scalar multiples of the scaling element
    FieldExt gf9(3, 2);
    auto v = span_of(gf9, {gf9.parse_element("t+1")});
    auto a = gf9.parse_element("t");
    CHECK(scale_inv(a, v) == scale_inv(gf9.scalar_mul(2, a), v));
}

TEST_CASE("subfields") {
    FieldExt gf16(2, 4);
    CHECK(subfield(gf16, 1) == span_of(gf16, {gf16.one()}));
    CHECK(subfield(gf16, 4) == Subspace::full_space(gf16));
    auto gf4_in_16 = subfield(gf16, 2);
    CHECK(gf4_in_16 == span_of(gf16, {gf16.one(), gf16.parse_element("t^2+t")}));
    CHECK_THROWS_AS(subfield(gf16, 3), DomainError);
}

TEST_CASE("subfield lattice") {
    FieldExt ext(2, 6);
    std::vector<int> divisors{1, 2, 3, 6};
    for (int d1 : divisors) {
        auto h1 = subfield(ext, d1);
        CHECK(product_span(h1, h1) == h1);
        for (int d2 : divisors) {
            auto h2 = subfield(ext, d2);
            CHECK(h2.contains(h1) == (d2 % d1 == 0));
        }
    }
}

TEST_CASE("generated subfield degree") {
    FieldExt gf16(2, 4);
    CHECK(generated_subfield(gf16, gf16.one()) == 1);
    CHECK(generated_subfield(gf16, gf16.zero()) == 1);
    CHECK(generated_subfield(gf16, gf16.parse_element("t^2+t")) == 2);
    CHECK(generated_subfield(gf16, gf16.gen()) == 4);

    FieldExt gf4(2, 2);
    CHECK(generated_subfield(gf4, gf4.gen()) == 2);
}

TEST_CASE("stabilizer subfield") {
    FieldExt gf4(2, 2);
    CHECK(stabilizer_subfield(Subspace::full_space(gf4)) == Subspace::full_space(gf4));
    CHECK(stabilizer_subfield(span_of(gf4, {gf4.gen()})) == subfield(gf4, 1));

    FieldExt gf16(2, 4);
    auto gf4_in_16 = subfield(gf16, 2);
    CHECK(stabilizer_subfield(gf4_in_16) == gf4_in_16);
    CHECK_THROWS_AS(stabilizer_subfield(Subspace::zero_space(gf4)), DomainError);
}

TEST_CASE("stabilizer agrees with the elementwise oracle") {
    for (const auto& ext : {FieldExt(2, 4), FieldExt(3, 2), FieldExt(2, 6)}) {
        SplitMix64 rng(41 + static_cast<std::uint64_t>(ext.order()));
        for (int it = 0; it < 200; ++it) {
            auto v = rand_space(ext, rng, 1);
            auto h = stabilizer_subfield(v);
            CHECK(h == oracle::brute_stabilizer(v));
            CHECK(product_span(h, v) == v);
        }
    }
}

TEST_CASE("product-span inequality on worked instances") {
    FieldExt gf16(2, 4);
    auto gf4_in_16 = subfield(gf16, 2);
    auto rec = verify_linear_kneser(gf4_in_16, gf4_in_16);
    CHECK(rec.lhs == 2);
    CHECK(rec.rhs == 2);
    CHECK(rec.holds);

    auto one = span_of(gf16, {gf16.one()});
    auto b = span_of(gf16, {gf16.gen(), gf16.parse_element("t^3")});
    auto rec2 = verify_linear_kneser(one, b);
    CHECK(rec2.holds);
    CHECK(rec2.lhs == b.dim());

    // the span of all products here is the whole field, so the stabilizer is
    // the whole field as well and the bound drops to 1
    FieldExt gf8(2, 3);
    auto pair = span_of(gf8, {gf8.one(), gf8.gen()});
    auto rec3 = verify_linear_kneser(pair, pair);
    CHECK(rec3.lhs == 3);
    CHECK(rec3.H == Subspace::full_space(gf8));
    CHECK(rec3.rhs == 1);
    CHECK(rec3.holds);
}

TEST_CASE("orthogonal bases") {
    FieldExt gf16(2, 4);
    auto b = span_of(gf16, {gf16.one(), gf16.gen()});
    CHECK(orthogonal(b, b).empty());
    CHECK(orthogonal(Subspace::zero_space(gf16), b).size() == 2);

    auto c = span_of(gf16, {gf16.one()});
    auto phis = orthogonal(c, b);
    REQUIRE(phis.size() == 1);
    CHECK(phis[0].coords == std::vector<int>{0, 1});  // vanishes on the first basis vector

    CHECK_THROWS_AS(orthogonal(span_of(gf16, {gf16.parse_element("t^3")}), b), DomainError);
}

TEST_CASE("orthogonal dimension identity on random pairs") {
    FieldExt ext(3, 2);
    SplitMix64 rng(4242);
    for (int it = 0; it < 300; ++it) {
        auto b = rand_space(ext, rng, 1);
        auto c = rand_space(ext, rng);
        if (!b.contains(c)) continue;
        CHECK(static_cast<int>(orthogonal(c, b).size()) == b.dim() - c.dim());
    }
}

TEST_CASE("complement and coordinates") {
    FieldExt gf16(2, 4);
    auto a = span_of(gf16, {gf16.one(), gf16.parse_element("t^2+t"), gf16.gen()});
    auto v = subfield(gf16, 2);
    auto c = complement_in(v, a);
    CHECK(c.dim() == a.dim() - v.dim());
    CHECK(intersect(c, v) == Subspace::zero_space(gf16));
    CHECK(sum(c, v) == a);

    auto coords = coords_in(a, gf16.parse_element("t^2"));
    CHECK(from_coords(a, coords) == gf16.parse_element("t^2"));
    CHECK_THROWS_AS(coords_in(v, gf16.gen()), DomainError);
}

TEST_CASE("projective points are canonical") {
    FieldExt gf9(3, 2);
    auto points = projective_points(Subspace::full_space(gf9));
    CHECK(points.size() == 4);  // (9-1)/(3-1)
    for (const auto& x : points) {
        std::size_t first = 0;
        while (x.coeffs[first] == 0) ++first;
        CHECK(x.coeffs[first] == 1);
    }
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
    FieldExt gf16(2, 4);
    CHECK(enumerate_subspaces(gf16, 0).size() == 1);
    CHECK(enumerate_subspaces(gf16, 1).size() == 15);
    CHECK(enumerate_subspaces(gf16, 2).size() == 35);
    CHECK(enumerate_subspaces(gf16, 3).size() == 15);
    CHECK(enumerate_subspaces(gf16, 4).size() == 1);

    FieldExt gf81(3, 4);
    CHECK(enumerate_subspaces(gf81, 2).size() == 130);

    // all distinct
    auto planes = enumerate_subspaces(gf16, 2);
    for (std::size_t i = 0; i < planes.size(); ++i)
        for (std::size_t j = i + 1; j < planes.size(); ++j) CHECK_FALSE(planes[i] == planes[j]);
}
