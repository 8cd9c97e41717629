#include <doctest.h>

#include "matchkit/gf.hpp"

using namespace matchkit;

TEST_CASE("canonical moduli") {
    CHECK(FieldExt(2, 2).modulus() == std::vector<int>{1, 1, 1});      // t^2+t+1
    CHECK(FieldExt(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});   // t^3+t+1
    CHECK(FieldExt(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1}); // t^4+t+1
    CHECK(FieldExt(3, 2).modulus() == std::vector<int>{1, 0, 1});      // t^2+1
    CHECK(FieldExt(2, 4).modulus_string() == "t^4+t+1");
}

TEST_CASE("field construction validation") {
    CHECK_THROWS_AS(FieldExt(4, 2), DomainError);                      // characteristic not prime
    CHECK_THROWS_AS(FieldExt(2, 2, {1, 0, 1}), DomainError);           // t^2+1 = (t+1)^2 over GF(2)
    CHECK_THROWS_AS(FieldExt(2, 2, {1, 1, 0}), DomainError);           // not monic
    CHECK_THROWS_AS(FieldExt(2, 2, {1, 1}), DomainError);              // wrong degree
    CHECK(FieldExt(2, 1).order() == 2);
}

TEST_CASE("arithmetic in GF(4)") {
    FieldExt gf4(2, 2);
    auto w = gf4.gen();
    auto w1 = gf4.make({1, 1});
    CHECK(gf4.mul(w, w) == w1);              // w^2 = w+1
    CHECK(gf4.inverse(w) == w1);             // w(w+1) = 1
    CHECK(gf4.mul(w, gf4.one()) == w);
    CHECK_THROWS_AS(gf4.inverse(gf4.zero()), DomainError);
}

TEST_CASE("field axioms hold exhaustively in GF(8) and GF(9)") {
    for (const auto& ext : {FieldExt(2, 3), FieldExt(3, 2)}) {
        for (long long i = 0; i < ext.order(); ++i) {
            auto x = ext.element_at(i);
            CHECK(ext.mul(x, ext.one()) == x);
            if (!ext.is_zero(x)) CHECK(ext.mul(x, ext.inverse(x)) == ext.one());
            for (long long j = 0; j < ext.order(); ++j) {
                auto y = ext.element_at(j);
                CHECK(ext.mul(x, y) == ext.mul(y, x));
                for (long long k = 0; k < ext.order(); ++k) {
                    auto z = ext.element_at(k);
                    CHECK(ext.mul(ext.mul(x, y), z) == ext.mul(x, ext.mul(y, z)));
                    CHECK(ext.mul(x, ext.add(y, z)) == ext.add(ext.mul(x, y), ext.mul(x, z)));
                }
            }
        }
    }
}

TEST_CASE("ranks enumerate the field") {
    FieldExt gf16(2, 4);
    for (long long i = 0; i < gf16.order(); ++i) CHECK(gf16.rank_of(gf16.element_at(i)) == i);
}

TEST_CASE("frobenius fixes exactly the subfield") {
    FieldExt gf16(2, 4);
    int fixed = 0;
    for (long long i = 0; i < gf16.order(); ++i) {
        auto x = gf16.element_at(i);
        if (gf16.frobenius(x, 2) == x) ++fixed;
    }
    CHECK(fixed == 4);  // GF(4) inside GF(16)
}

TEST_CASE("element formatting and parsing round trip bit-exactly") {
    for (const auto& ext : {FieldExt(2, 4), FieldExt(3, 2), FieldExt(5, 1)}) {
        for (long long i = 0; i < ext.order(); ++i) {
            auto x = ext.element_at(i);
            CHECK(ext.parse_element(ext.format_element(x)) == x);
        }
    }
    FieldExt gf9(3, 2);
    CHECK(gf9.format_element(gf9.make({2, 2})) == "2t+2");
    CHECK(gf9.parse_element("2*t + 2") == gf9.make({2, 2}));
    CHECK(gf9.parse_element("t^2") == gf9.make({2, 0}));  // reduced mod t^2+1
    CHECK_THROWS_AS(gf9.parse_element(""), ParseError);
    CHECK_THROWS_AS(gf9.parse_element("t^"), ParseError);
    CHECK_THROWS_AS(gf9.parse_element("x+1"), ParseError);
}

TEST_CASE("field spec parsing") {
    CHECK(parse_field("GF(2^4)", "") == FieldExt(2, 4));
    CHECK(parse_field("GF(16)", "") == FieldExt(2, 4));
    CHECK(parse_field("GF(9)", "") == FieldExt(3, 2));
    CHECK(parse_field("GF(7)", "") == FieldExt(7, 1));
    CHECK(parse_field("GF(2^4)", "1,1,0,0,1") == FieldExt(2, 4, {1, 1, 0, 0, 1}));
    CHECK(parse_field("GF(2^4)", "1,0,0,1,1").modulus_string() == "t^4+t^3+1");

    CHECK_THROWS_AS(parse_field("GF(12)", ""), ParseError);
    CHECK_THROWS_AS(parse_field("GF(4^2)", ""), ParseError);
    CHECK_THROWS_AS(parse_field("F(4)", ""), ParseError);
    CHECK_THROWS_AS(parse_field("GF(2^4) junk", ""), ParseError);
    CHECK_THROWS_AS(parse_field("GF(2^13)", ""), ResourceError);  // above the order budget
}
