#include <doctest.h>

#include <random>

#include "redeilab/poly.hpp"
#include "support.hpp"

using namespace redeilab;

namespace {

Polynomial random_poly(const PrimeCtx& ctx, std::mt19937_64& rng, u64 max_deg) {
    std::vector<u64> c(static_cast<std::size_t>(rng() % (max_deg + 1)) + 1);
    for (u64& x : c) x = rng() % ctx.p();
    return Polynomial(ctx, std::move(c));
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("reduced form and evaluation") {
    PrimeCtx f7(7);
    Polynomial cubic(f7, {1, 0, 0, 1});  // x^3 + 1
    CHECK(cubic.degree() == 3);
    CHECK(cubic.evaluate(u64(3)) == 0);
    CHECK(Polynomial::constant(f7, 1).evaluate(u64(5)) == 1);
    CHECK(Polynomial(f7, {4, 0, 0, 4}).evaluate(u64(0)) == 4);
    CHECK(Polynomial(f7, {3, 7, 14}).degree() == 0);  // trailing zeros trimmed
    CHECK(Polynomial::zero(f7).degree() == -1);
    CHECK(Polynomial::zero(f7).evaluate(u64(4)) == 0);
    CHECK_THROWS_AS(Polynomial(f7, std::vector<u64>(8, 1)), std::invalid_argument);
    PrimeCtx f5(5);
    CHECK_THROWS_AS(cubic.evaluate(FieldElement(f5, 1)), std::invalid_argument);
}

TEST_CASE("interpolation: frozen cases") {
    PrimeCtx f5(5), f7(7);
    std::vector<u64> ones(5, 1);
    CHECK(interpolate(f5, ones) == Polynomial::constant(f5, 1));

    std::vector<u64> indicator{1, 0, 0, 0, 0};
    Polynomial ind = interpolate(f5, indicator);
    CHECK(ind.coeffs() == std::vector<u64>{1, 0, 0, 0, 4});
    for (u64 x = 0; x < 5; ++x) CHECK(ind.evaluate(x) == indicator[x]);

    Polynomial cubic(f7, {1, 0, 0, 1});
    CHECK(interpolate(f7, cubic.values()) == cubic);

    CHECK_THROWS_AS(interpolate(f7, ones), std::invalid_argument);  // wrong length
}

TEST_CASE("interpolation round-trips and matches Lagrange") {
    std::mt19937_64 rng(7);
    for (u64 p : {5ull, 13ull, 101ull}) {
        PrimeCtx ctx(p);
        for (int i = 0; i < 20; ++i) {
            Polynomial P = random_poly(ctx, rng, p - 1);
            CHECK(interpolate(ctx, P.values()) == P);
        }
    }
    PrimeCtx f13(13);
    for (int i = 0; i < 20; ++i) {
        std::vector<u64> f(13);
        for (u64& v : f) v = rng() % 13;
        CHECK(interpolate(f13, f) == test::lagrange_interpolate(f13, f));
    }
}

TEST_CASE("moment identity for reduced polynomials") {
    std::mt19937_64 rng(13);
    PrimeCtx ctx(13);
    for (int i = 0; i < 10; ++i) {
        Polynomial P = random_poly(ctx, rng, 12);
        std::vector<u64> vals = P.values();
        std::vector<u64> pw(13, 1);
        for (u64 t = 0; t + 1 < 13; ++t) {
            u64 m = 0;
            for (u64 x = 0; x < 13; ++x) m = ctx.add(m, ctx.mul(pw[x], vals[x]));
            CHECK(m == ctx.neg(P.coeff(12 - t)));
            for (u64 x = 0; x < 13; ++x) pw[x] = ctx.mul(pw[x], x);
        }
    }
}

TEST_CASE("min degree witness") {
    PrimeCtx f7(7);
    Polynomial cubic(f7, {1, 0, 0, 1});
    auto w = min_degree_witness(f7, cubic.values());
    CHECK(w.degree == 3);
    CHECK(w.witness == 3);

    auto z = min_degree_witness(f7, std::vector<u64>(7, 0));
    CHECK(z.degree == -1);
    CHECK_FALSE(z.witness.has_value());

    auto c = min_degree_witness(f7, std::vector<u64>(7, 5));
    CHECK(c.degree == 0);
    CHECK_FALSE(c.witness.has_value());

    // permutation polynomials of reduced degree p-2
    PrimeCtx f11(11);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        u64 a = rng() % 10 + 1, b = rng() % 11;
        std::vector<u64> vals(11);
        for (u64 x = 0; x < 11; ++x)
            vals[x] = f11.mul(a, f11.pow(f11.add(x, b), 9));  // a*(x+b)^(p-2)
        auto pw = min_degree_witness(f11, vals);
        CHECK(pw.degree == 9);
        CHECK(pw.witness == 1);
    }
}

TEST_CASE("range profile: frozen cases") {
    PrimeCtx f7(7);
    RangeProfile rp = range_profile(Polynomial(f7, {1, 0, 0, 1}));
    CHECK(rp.values == std::vector<u64>{1, 2, 2, 0, 2, 0, 0});
    CHECK(rp.range_sum == 7);
    CHECK(rp.roots == std::vector<u64>{3, 5, 6});
    CHECK(rp.excess == std::vector<u64>{1, 2, 4});

    RangeProfile rp2 = range_profile(Polynomial(f7, {4, 0, 0, 4}));
    CHECK(rp2.values == std::vector<u64>{4, 1, 1, 0, 1, 0, 0});
    CHECK(rp2.range_sum == 7);
    CHECK(rp2.excess == std::vector<u64>{0, 0, 0});

    RangeProfile rp3 = range_profile(Polynomial::constant(f7, 1));
    CHECK(rp3.range_sum == 7);
    CHECK(rp3.roots.empty());
    CHECK(rp3.excess.empty());
}

TEST_CASE("range sum is -a_{p-1} mod p") {
    std::mt19937_64 rng(99);
    PrimeCtx ctx(13);
    for (int i = 0; i < 30; ++i) {
        Polynomial P = random_poly(ctx, rng, 12);
        RangeProfile rp = range_profile(P);
        CHECK(rp.range_sum % 13 == ctx.neg(P.coeff(12)));
        CHECK((rp.range_sum % 13 == 0) == (P.degree() <= 11));
    }
}

TEST_CASE("affine substitution") {
    PrimeCtx f7(7);
    Polynomial cubic(f7, {1, 0, 0, 1});
    CHECK(affine_substitute(cubic, 1, 0) == cubic);
    CHECK(affine_substitute(cubic, 3, 0) == Polynomial(f7, {1, 0, 0, 6}));  // LC 27 = -1
    CHECK(affine_substitute(cubic, 1, 1) == Polynomial(f7, {2, 3, 3, 1}));  // (x+1)^3 + 1
    CHECK_THROWS_AS(affine_substitute(cubic, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(affine_substitute(cubic, 7, 1), std::invalid_argument);  // 7 = 0 mod 7

    std::mt19937_64 rng(3);
    PrimeCtx ctx(13);
    for (int i = 0; i < 20; ++i) {
        Polynomial P = random_poly(ctx, rng, 12);
        u64 a1 = rng() % 12 + 1, b1 = rng() % 13;
        u64 a2 = rng() % 12 + 1, b2 = rng() % 13;
        Polynomial twice = affine_substitute(affine_substitute(P, a1, b1), a2, b2);
        Polynomial once = affine_substitute(P, ctx.mul(a1, a2), ctx.add(ctx.mul(a1, b2), b1));
        CHECK(twice == once);
        if (!P.is_zero()) CHECK(affine_substitute(P, a1, b1).degree() == P.degree());
    }
}

TEST_CASE("power sum identity") {
    PrimeCtx f7(7), f5(5);
    PowerSumReport r1 = power_sum_identity_check(Polynomial(f7, {1, 0, 0, 1}), 3);
    CHECK(r1.holds);
    CHECK(r1.residuals == std::vector<u64>{0, 0, 0, 0});

    PowerSumReport r2 = power_sum_identity_check(Polynomial::constant(f5, 2), 1);
    CHECK(r2.holds);

    CHECK_THROWS_AS(power_sum_identity_check(Polynomial::zero(f7), 1), std::invalid_argument);
    CHECK_THROWS_AS(power_sum_identity_check(Polynomial(f7, {1, 0, 0, 1}), 6), std::invalid_argument);

    std::mt19937_64 rng(4);
    for (u64 p : {11ull, 13ull}) {
        PrimeCtx ctx(p);
        for (int i = 0; i < 10; ++i) {
            Polynomial P = random_poly(ctx, rng, p - 1);
            if (P.is_zero()) continue;
            CHECK(power_sum_identity_check(P, p - 2).holds);
        }
    }
}

TEST_CASE("family constructors") {
    PrimeCtx f7(7), f5(5);
    CHECK(make_family(f7, FamilyVariant::I, FamilySign::Plus, 0) == Polynomial(f7, {1, 0, 0, 1}));
    CHECK(make_family(f7, FamilyVariant::II, FamilySign::Plus, 0) == Polynomial(f7, {4, 0, 0, 4}));
    Polynomial f5i_minus = make_family(f5, FamilyVariant::I, FamilySign::Minus, 0);
    CHECK(f5i_minus == Polynomial(f5, {1, 0, 4}));
    CHECK(f5i_minus.values() == std::vector<u64>{1, 0, 2, 2, 0});

    for (u64 p : test::odd_primes_upto(101)) {
        PrimeCtx ctx(p);
        for (FamilyVariant v : {FamilyVariant::I, FamilyVariant::II})
            for (FamilySign s : {FamilySign::Plus, FamilySign::Minus})
                for (u64 shift : {u64(0), u64(1), (p - 1) / 2}) {
                    Polynomial P = make_family(ctx, v, s, shift);
                    RangeProfile rp = range_profile(P);
                    CHECK(P.degree() == static_cast<i64>(ctx.half()));
                    CHECK(rp.range_sum == p);
                    CHECK(rp.roots.size() == ctx.half());
                    // roots and excess are disjoint
                    for (u64 b : rp.excess)
                        CHECK_FALSE(std::binary_search(rp.roots.begin(), rp.roots.end(), b));
                }
    }
}

TEST_CASE("from_roots") {
    PrimeCtx f7(7);
    std::vector<u64> roots{3, 5, 6};
    CHECK(from_roots(f7, 1, roots) == Polynomial(f7, {1, 0, 0, 1}));
    CHECK(from_roots(f7, 4, roots) == Polynomial(f7, {4, 0, 0, 4}));
}

}  // TEST_SUITE
