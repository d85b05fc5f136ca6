#include <doctest.h>

#include <numeric>
#include <random>

#include "redeilab/charsum.hpp"
#include "redeilab/sampling.hpp"
#include "support.hpp"

using namespace redeilab;

namespace {

std::vector<u64> quadratic_residues(const PrimeCtx& ctx) {
    std::vector<u64> q;
    for (u64 x = 1; x < ctx.p(); ++x)
        if (ctx.legendre(x) == 1) q.push_back(x);
    return q;
}

}  // namespace

TEST_SUITE("charsum") {

TEST_CASE("shift profile: frozen cases") {
    PrimeCtx f13(13);
    ShiftProfile qr13 = shift_profile(f13, quadratic_residues(f13));
    CHECK(qr13.t[0] == 6);
    CHECK(qr13.max_abs == 6);
    CHECK(qr13.argmax == 0);

    PrimeCtx f11(11);
    std::vector<u64> all(11);
    std::iota(all.begin(), all.end(), 0);
    ShiftProfile full = shift_profile(f11, all);
    for (u64 g = 0; g < 11; ++g) CHECK(full.t[g] == 0);

    PrimeCtx f7(7);
    ShiftProfile three = shift_profile(f7, std::vector<u64>{1, 2, 4});
    CHECK(three.t[3] == -1);

    CHECK_THROWS_AS(shift_profile(f7, std::vector<u64>{}), std::invalid_argument);
    CHECK_THROWS_AS(shift_profile(f7, std::vector<u64>{9}), std::invalid_argument);
}

TEST_CASE("shift profile sums to zero over all shifts") {
    std::mt19937_64 rng(31);
    PrimeCtx ctx(101);
    for (int i = 0; i < 10; ++i) {
        std::vector<u64> c = sample_subset(rng, 101, rng() % 80 + 5);
        ShiftProfile prof = shift_profile(ctx, c);
        i64 total = std::accumulate(prof.t.begin(), prof.t.end(), i64(0));
        CHECK(total == 0);
    }
}

TEST_CASE("shift profile is thread-count independent") {
    PrimeCtx ctx(101);
    std::vector<u64> q = quadratic_residues(ctx);
    ShiftProfile a = shift_profile(ctx, q, 1);
    ShiftProfile b = shift_profile(ctx, q, 4);
    CHECK(a.t == b.t);
}

TEST_CASE("paley counts: frozen and against closed forms") {
    PrimeCtx f13(13);
    PaleyTable t13 = paley_table(f13, 1);
    CHECK(t13.counts[0][0] == 2);
    CHECK(t13.counts[0][1] == 3);
    CHECK(t13.counts[1][0] == 3);
    CHECK(t13.counts[1][1] == 3);
    PaleyTable t13n = paley_table(f13, -1);
    CHECK(t13n.counts[1][1] == 2);
    CHECK(t13n.counts[0][0] == 3);

    // p = 11 (3 mod 4): one off-diagonal cell is (p+1)/4, the rest (p-3)/4.
    PrimeCtx f11(11);
    PaleyTable t11 = paley_table(f11, 1);
    CHECK(t11.counts[0][0] == 2);
    CHECK(t11.counts[0][1] == 3);
    CHECK(t11.counts[1][0] == 2);
    CHECK(t11.counts[1][1] == 2);
    PaleyTable t11n = paley_table(f11, -1);
    CHECK(t11n.counts[0][0] == 2);
    CHECK(t11n.counts[0][1] == 2);
    CHECK(t11n.counts[1][0] == 3);
    CHECK(t11n.counts[1][1] == 2);

    for (u64 p : test::odd_primes_upto(101)) {
        PrimeCtx ctx(p);
        for (int cls : {1, -1}) {
            PaleyTable brute = paley_table(ctx, cls);  // checks all representatives internally
            CHECK(brute == paley_closed_form(p, cls));
            u64 total = brute.counts[0][0] + brute.counts[0][1] + brute.counts[1][0] + brute.counts[1][1];
            CHECK(total == p - 2);
        }
    }
}

TEST_CASE("unique large shift") {
    PrimeCtx f13(13);
    UniqueLargeShiftReport r13 = unique_large_shift_check(f13, quadratic_residues(f13));
    CHECK(r13.holds());
    CHECK(r13.large_gammas == std::vector<u64>{0});
    CHECK(r13.max_abs == 6);
    CHECK(r13.cap_triggered);

    PrimeCtx f7(7);
    UniqueLargeShiftReport r7 = unique_large_shift_check(f7, quadratic_residues(f7));
    CHECK(r7.holds());
    CHECK(r7.large_gammas == std::vector<u64>{0});

    CHECK_THROWS_AS(unique_large_shift_check(f7, std::vector<u64>{1, 2}), std::invalid_argument);

    std::mt19937_64 rng(17);
    PrimeCtx ctx(101);
    for (int i = 0; i < 50; ++i) {
        std::vector<u64> c = sample_subset(rng, 101, 50);
        CHECK(unique_large_shift_check(ctx, c).holds());
    }
}

TEST_CASE("sign patterns: frozen, cross-checked against paley") {
    PrimeCtx ctx(101);
    SignPatternReport m1 = weil_sign_patterns(ctx, std::vector<u64>{0});
    CHECK(m1.counts[0] == 50);  // mask 0: omega = -1
    CHECK(m1.counts[1] == 50);
    CHECK(m1.all_bounds_hold);

    SignPatternReport m2 = weil_sign_patterns(ctx, std::vector<u64>{0, 1});
    PaleyTable pt = paley_closed_form(101, 1);  // gamma = 1 is a square
    // mask bits: bit0 = chi(y), bit1 = chi(y+1); paley counts[i][j] index +1 first
    CHECK(m2.counts[0b11] == pt.counts[0][0]);
    CHECK(m2.counts[0b01] == pt.counts[0][1]);
    CHECK(m2.counts[0b10] == pt.counts[1][0]);
    CHECK(m2.counts[0b00] == pt.counts[1][1]);
    CHECK(m2.all_bounds_hold);

    CHECK_THROWS_AS(weil_sign_patterns(ctx, std::vector<u64>{0, 1, 2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(weil_sign_patterns(ctx, std::vector<u64>{0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(weil_sign_patterns(ctx, std::vector<u64>{0, 0}), std::invalid_argument);
    PrimeCtx f173(173);
    CHECK(weil_sign_patterns(f173, std::vector<u64>{0, 1, 2}).all_bounds_hold);
}

TEST_CASE("translate cell sizes") {
    PrimeCtx ctx(101);
    CellSizeReport t1 = translate_cell_sizes(ctx, std::vector<u64>{0});
    CHECK(t1.sizes[1] == 50);  // inside Q
    CHECK(t1.sizes[0] == 51);
    CHECK(t1.all_bounds_hold);
    CHECK(t1.bound_value == doctest::Approx(101.0 / 2 + (std::sqrt(101.0) + 1) / 2));

    CellSizeReport t3 = translate_cell_sizes(ctx, std::vector<u64>{0, 1, 2});
    CHECK(t3.sizes.size() == 8);
    u64 total = std::accumulate(t3.sizes.begin(), t3.sizes.end(), u64(0));
    CHECK(total == 101);
    CHECK(t3.all_bounds_hold);

    CHECK_THROWS_AS(translate_cell_sizes(ctx, std::vector<u64>{0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("min intersection bound") {
    MinIntersectionReport deg = min_intersection_bound({{1, 2}}, {2, 3}, 1);
    CHECK(deg.lhs == 1);
    CHECK(deg.rhs_numerator == 2);
    CHECK(deg.holds);

    MinIntersectionReport dis = min_intersection_bound({{1, 2}}, {3, 4}, 1);
    CHECK(dis.lhs == 0);
    CHECK(dis.holds);

    CHECK_THROWS_AS(min_intersection_bound({{1, 2, 3, 4, 5}}, {1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(min_intersection_bound({{1}}, {1}, 2), std::invalid_argument);
}

TEST_CASE("min intersection: structured translate instance") {
    PrimeCtx ctx(26927);
    std::vector<u64> q = quadratic_residues(ctx);
    std::vector<std::vector<u64>> sets;
    for (u64 r = 0; r < 8; ++r) {
        std::vector<u64> a;
        a.reserve(q.size());
        for (u64 x : q) a.push_back(ctx.add(x, r));
        sets.push_back(std::move(a));
    }
    MinIntersectionReport rep = min_intersection_bound(sets, q, 5);
    CHECK(rep.proviso_lhs <= rep.b_size);
    CHECK(rep.holds);
}

TEST_CASE("translate proviso closed-form boundary") {
    CHECK(qr_translate_proviso_bound_holds(7408849));
    CHECK_FALSE(qr_translate_proviso_bound_holds(26927));
    CHECK_FALSE(qr_translate_proviso_bound_holds(1000003));
}

TEST_CASE("concentration scan") {
    PrimeCtx ctx(101);
    ConcentrationReport rep = concentration_scan(ctx, quadratic_residues(ctx));
    CHECK(rep.count == 1);
    CHECK(rep.witnesses == std::vector<u64>{0});
    CHECK_FALSE(rep.asserted);

    for (u64 p : {13ull, 29ull, 53ull}) {
        PrimeCtx c2(p);
        ConcentrationReport r2 = concentration_scan(c2, quadratic_residues(c2));
        CHECK(r2.count >= 1);  // the zero shift always reaches (p-1)/2 >= p/7
    }

    CHECK_THROWS_AS(concentration_scan(ctx, std::vector<u64>{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(concentration_scan(ctx, quadratic_residues(ctx), 1, 0), std::invalid_argument);
}

}  // TEST_SUITE
