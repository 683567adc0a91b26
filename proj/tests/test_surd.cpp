#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadcal/enumerate.hpp"
#include "quadcal/surd.hpp"

using namespace quadcal;

namespace {

std::vector<Int> word(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("discriminant validity") {
    CHECK(is_valid_discriminant(Int(5)));
    CHECK(is_valid_discriminant(Int(8)));
    CHECK(is_valid_discriminant(Int(12)));
    CHECK(!is_valid_discriminant(Int(7)));   // 3 (mod 4)
    CHECK(!is_valid_discriminant(Int(16)));  // square
    CHECK(!is_valid_discriminant(Int(-4)));
    CHECK(!is_valid_discriminant(Int(20 * 20)));
}

TEST_CASE("make_surd keeps representations that already satisfy the invariant") {
    QuadSurd w = make_surd(1, 2, 5);
    CHECK(w.P() == 1);
    CHECK(w.Q() == 2);
    CHECK(w.D() == 5);
    QuadSurd v = make_surd(0, 2, 12);
    CHECK(v.P() == 0);
    CHECK(v.Q() == 2);
    CHECK(v.D() == 12);
}

TEST_CASE("make_surd rescales (1+sqrt(5))/3 to a divisibility-correct triple") {
    QuadSurd w = make_surd(1, 3, 5);
    CHECK((w.D() - w.P() * w.P()) % w.Q() == 0);
    CHECK(is_valid_discriminant(w.D()));
    CHECK(w.Q() > 0);  // still the larger root
    // value check: the minimal polynomial of (1+sqrt(5))/3 is 9x^2-6x-4
    CHECK(to_poly(w) == QuadPoly{9, -6, -4});
}

TEST_CASE("make_surd rejects bad input") {
    CHECK_THROWS_AS(make_surd(1, 0, 5), std::domain_error);
    CHECK_THROWS_AS(make_surd(1, 2, 7), std::domain_error);
    CHECK_THROWS_AS(make_surd(1, 2, 16), std::domain_error);
    CHECK_THROWS_AS(make_surd(1, 2, -3), std::domain_error);
}

TEST_CASE("from_poly / to_poly on fixed values") {
    CHECK(from_poly(QuadPoly{1, -1, -1}) == make_surd(1, 2, 5));  // golden ratio
    CHECK(from_poly(QuadPoly{5, -5, -1}) == make_surd(5, 10, 45));
    CHECK(to_poly(make_surd(6, 2, 40)) == QuadPoly{1, -6, -1});
    CHECK_THROWS_AS(from_poly(QuadPoly{2, -2, -2}), std::domain_error);  // imprimitive
    CHECK_THROWS_AS(from_poly(QuadPoly{-1, 1, 1}), std::domain_error);
}

TEST_CASE("from_poly and to_poly are mutually inverse on larger roots") {
    for (long D : {5L, 8L, 12L, 13L, 21L, 40L, 45L, 48L, 60L, 65L}) {
        for (const auto& w : enumerate_reduced(Int(D))) {
            QuadPoly f = to_poly(w);
            CHECK(f.disc() == D);
            CHECK(gcd_int(gcd_int(f.a, f.b), f.c) == 1);
            CHECK(from_poly(f) == w);
        }
    }
}

TEST_CASE("is_reduced / is_m_reduced on fixed values") {
    CHECK(is_reduced(make_surd(1, 2, 5)));
    CHECK(is_reduced(make_surd(6, 2, 40)));
    CHECK(!is_reduced(make_surd(5, 2, 5)));   // conjugate > 0
    CHECK(is_m_reduced(make_surd(3, 2, 5)));
    CHECK(!is_m_reduced(make_surd(1, 2, 5)));
    CHECK(!is_m_reduced(make_surd(5, 2, 5)));  // conjugate >= 1
}

TEST_CASE("floor and ceil") {
    CHECK(floor_of(make_surd(1, 2, 5)) == 1);
    CHECK(ceil_of(make_surd(3, 2, 5)) == 3);
    CHECK(floor_of(make_surd(6, 2, 40)) == 6);
    // negative Q: (1 - sqrt(5))/2 written as (-1 + sqrt(5))/(-2)
    CHECK(floor_of(make_surd(-1, -2, 5)) == -1);
    CHECK(floor_of(make_surd(0, -2, 12)) == -2);  // -sqrt(3)
}

TEST_CASE("plus step on fixed values") {
    auto [d1, n1] = cf_step_plus(make_surd(1, 2, 5));
    CHECK(d1 == 1);
    CHECK(n1 == make_surd(1, 2, 5));  // golden-ratio fixed point
    auto [d2, n2] = cf_step_plus(make_surd(6, 2, 40));
    CHECK(d2 == 6);
    CHECK(n2 == make_surd(6, 2, 40));
    auto [d3, n3] = cf_step_plus(make_surd(4, 4, 40));
    CHECK(d3 == 2);
    CHECK(n3 == make_surd(4, 6, 40));
}

TEST_CASE("minus step on fixed values") {
    auto [d1, n1] = cf_step_minus(make_surd(3, 2, 5));
    CHECK(d1 == 3);
    CHECK(n1 == make_surd(3, 2, 5));  // fixed point: (3+sqrt(5))/2 = [[3]]
    auto [d2, n2] = cf_step_minus(make_surd(6, 2, 40));
    CHECK(d2 == 7);
    CHECK(n2 == make_surd(8, 12, 40));
}

TEST_CASE("minus step closure on m-reduced numbers") {
    for (long D : {5L, 8L, 21L, 40L, 60L, 65L, 104L}) {
        for (const auto& w : enumerate_m_reduced(Int(D))) {
            CHECK(is_m_reduced(cf_step_minus(w).next));
        }
    }
}

TEST_CASE("plus step closure on reduced numbers") {
    for (long D : {5L, 8L, 21L, 40L, 60L, 65L, 104L}) {
        for (const auto& w : enumerate_reduced(Int(D))) {
            CHECK(is_reduced(cf_step_plus(w).next));
        }
    }
}

TEST_CASE("expand on fixed values") {
    CFExpansion e1 = expand(make_surd(1, 2, 45), CFKind::plus);
    CHECK(e1.preperiod == word({3}));
    CHECK(e1.period == word({1, 5}));

    // sqrt(3) = (0+sqrt(12))/2
    CFExpansion e2 = expand(make_surd(0, 2, 12), CFKind::plus);
    CHECK(e2.preperiod == word({1}));
    CHECK(e2.period == word({1, 2}));

    // sqrt(12) = 2 sqrt(3) = (0+sqrt(48))/2
    CFExpansion e3 = expand(make_surd(0, 2, 48), CFKind::plus);
    CHECK(e3.preperiod == word({3}));
    CHECK(e3.period == word({2, 6}));

    CFExpansion e4 = expand(make_surd(3, 2, 5), CFKind::minus);
    CHECK(e4.preperiod.empty());
    CHECK(e4.period == word({3}));
}

TEST_CASE("expand is deterministic") {
    for (int rep = 0; rep < 3; ++rep) {
        CFExpansion e = expand(make_surd(11, 14, 221), CFKind::plus);
        CFExpansion f = expand(make_surd(11, 14, 221), CFKind::plus);
        CHECK(e.preperiod == f.preperiod);
        CHECK(e.period == f.period);
    }
}

TEST_CASE("purely periodic exactly for reduced (plus) and m-reduced (minus)") {
    for (long D : {5L, 8L, 13L, 21L, 40L, 45L, 48L, 65L}) {
        for (const auto& w : enumerate_reduced(Int(D)))
            CHECK(expand(w, CFKind::plus).preperiod.empty());
        for (const auto& w : enumerate_m_reduced(Int(D)))
            CHECK(expand(w, CFKind::minus).preperiod.empty());
    }
    // a few non-reduced starts
    CHECK(!expand(make_surd(5, 2, 5), CFKind::plus).preperiod.empty());
    CHECK(!expand(make_surd(0, 2, 48), CFKind::plus).preperiod.empty());
    CHECK(!expand(make_surd(1, 2, 5), CFKind::minus).preperiod.empty());
}

TEST_CASE("stats") {
    CFStats s1 = stats(CFExpansion{CFKind::plus, {}, word({6})});
    CHECK(s1.l == 1);
    CHECK(*s1.S == 6);
    CHECK(!s1.S_plus.has_value());
    CFStats s2 = stats(CFExpansion{CFKind::plus, {}, word({2, 1, 1})});
    CHECK(s2.l == 3);
    CHECK(*s2.S == 4);
    CFStats s3 = stats(CFExpansion{CFKind::minus, {}, word({3})});
    CHECK(s3.l == 1);
    CHECK(*s3.S_plus == 1);
    CHECK(!s3.S.has_value());
    CFStats s4 = stats(CFExpansion{CFKind::minus, {}, word({2, 3, 2})});
    CHECK(s4.l == 3);
    CHECK(*s4.S_plus == 1);
}

TEST_CASE("period_matrix on fixed words") {
    CHECK(period_matrix(word({1})) == PeriodMatrix{1, 1, 1, 0});
    CHECK(period_matrix(word({6})) == PeriodMatrix{6, 1, 1, 0});
    CHECK(period_matrix(word({2, 1, 1})) == PeriodMatrix{5, 3, 2, 1});
    CHECK_THROWS_AS(period_matrix({}), std::domain_error);
    CHECK_THROWS_AS(period_matrix(word({1, 0})), std::domain_error);
}

TEST_CASE("period matrix determinant is (-1)^length") {
    // exhaustive over short words
    for (long a = 1; a <= 4; ++a)
        for (long b = 1; b <= 4; ++b)
            for (long c = 1; c <= 4; ++c) {
                CHECK(period_matrix(word({a})).det() == -1);
                CHECK(period_matrix(word({a, b})).det() == 1);
                CHECK(period_matrix(word({a, b, c})).det() == -1);
            }
}

TEST_CASE("reconstruction identity: r w^2 + (s-p) w - q = 0 for purely periodic w") {
    for (long D : {5L, 8L, 21L, 40L, 45L, 52L, 65L}) {
        for (const auto& w : enumerate_reduced(Int(D))) {
            PeriodMatrix m = period_matrix(expand(w, CFKind::plus).period);
            // split into rational and sqrt(D) parts, multiplied by Q^2
            Int rational = m.r * (w.P() * w.P() + w.D()) + (m.s - m.p) * w.Q() * w.P() -
                           m.q * w.Q() * w.Q();
            Int irrational = 2 * m.r * w.P() + (m.s - m.p) * w.Q();
            CHECK(rational == 0);
            CHECK(irrational == 0);
        }
    }
}

TEST_CASE("matrix_parity_class fixed values") {
    CHECK(matrix_parity_class(word({1})));       // n=1, k=1
    CHECK(!matrix_parity_class(word({2})));      // n=1, k=0
    CHECK(!matrix_parity_class(word({2, 1, 1})));  // n=3, k=2, product = (1 1; 0 1)
    CHECK_THROWS_AS(matrix_parity_class({}), std::domain_error);
}

TEST_CASE("parity-class membership matches n = k (mod 2) for all short words") {
    std::vector<Int> w;
    for (long len = 1; len <= 6; ++len) {
        std::vector<long> idx(len, 1);
        for (;;) {
            w.clear();
            long odd = 0;
            for (long v : idx) {
                w.emplace_back(v);
                if (v % 2 == 1) ++odd;
            }
            CHECK(matrix_parity_class(w) == ((len - odd) % 2 == 0));
            long pos = len - 1;
            while (pos >= 0 && idx[pos] == 4) idx[pos--] = 1;
            if (pos < 0) break;
            ++idx[pos];
        }
    }
}

TEST_CASE("ambiguous_shape") {
    CHECK(ambiguous_shape(word({6})) == AmbiguousShape::odd_palindrome);
    CHECK(ambiguous_shape(word({2, 1, 1})) == AmbiguousShape::odd_palindrome);  // [1,2,1]
    CHECK(ambiguous_shape(word({1, 2, 3})) == AmbiguousShape::none);
    CHECK(ambiguous_shape(word({2, 2})) == AmbiguousShape::even_palindrome);
    CHECK(ambiguous_shape(word({1, 2, 2, 1})) == AmbiguousShape::even_palindrome);
    CHECK(ambiguous_shape(word({2, 1, 1, 1})) == AmbiguousShape::offset_palindrome);
    CHECK(ambiguous_shape(word({1, 2, 1, 3})) == AmbiguousShape::offset_palindrome);
}

TEST_CASE("shape_of_word does not rotate") {
    CHECK(shape_of_word(word({2, 1, 1})) == AmbiguousShape::none);
    CHECK(shape_of_word(word({1, 2, 1})) == AmbiguousShape::odd_palindrome);
}

TEST_CASE("lex_min_rotation") {
    CHECK(lex_min_rotation(word({2, 1, 1})) == word({1, 1, 2}));
    CHECK(lex_min_rotation(word({5, 1})) == word({1, 5}));
    CHECK(lex_min_rotation(word({6})) == word({6}));
    CHECK(lex_min_rotation(word({1, 2, 1, 2})) == word({1, 2, 1, 2}));
}

TEST_CASE("neg_inv_conj maps reduced to reduced and is an involution") {
    for (long D : {5L, 21L, 40L, 65L}) {
        for (const auto& w : enumerate_reduced(Int(D))) {
            QuadSurd m = neg_inv_conj(w);
            CHECK(is_reduced(m));
            CHECK(neg_inv_conj(m) == w);
        }
    }
}

TEST_CASE("exact comparisons near boundaries") {
    // (5+sqrt(5))/2: conjugate is (5-sqrt(5))/2 ~ 1.38, so not m-reduced
    CHECK(compare_conj_with(make_surd(5, 2, 5), 1) > 0);
    // w = (8+sqrt(60))/4 > 1, conjugate ~ 0.06
    CHECK(compare_with(make_surd(8, 4, 60), 1) > 0);
    CHECK(compare_conj_with(make_surd(8, 4, 60), 0) > 0);
    CHECK(compare_conj_with(make_surd(8, 4, 60), 1) < 0);
}
