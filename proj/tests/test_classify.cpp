#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "redeilab/classify.hpp"
#include "support.hpp"

using namespace redeilab;

namespace {

std::set<std::vector<u64>> orbit_coeff_set(const ClassificationResult& res) {
    std::set<std::vector<u64>> out;
    for (const OrbitReport& o : res.orbits) out.insert(o.coeffs);
    return out;
}

Polynomial random_nonconstant(const PrimeCtx& ctx, std::mt19937_64& rng) {
    for (;;) {
        std::vector<u64> c(static_cast<std::size_t>(rng() % ctx.p()) + 1);
        for (u64& x : c) x = rng() % ctx.p();
        Polynomial P(ctx, std::move(c));
        if (P.degree() >= 1) return P;
    }
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("residue profile: frozen cases") {
    PrimeCtx f7(7);
    ResidueProfile prof = residue_profile(Polynomial(f7, {1, 0, 0, 1}));
    CHECK(prof.c == 1);
    CHECK(prof.s_roots[0] == -3);
    CHECK(prof.s_excess[0] == 3);
    CHECK(prof.r[0] == -6);  // c - p
    CHECK(prof.m_c_minus_p == 1);
    CHECK(prof.m_c == 6);
    CHECK(prof.r_in_admissible_pair);
    CHECK(prof.tallies_match);

    ResidueProfile prof2 = residue_profile(Polynomial(f7, {4, 0, 0, 4}));
    CHECK(prof2.c == 4);
    CHECK(prof2.m_c_minus_p == 4);
    CHECK(prof2.m_c == 3);
    CHECK(prof2.tallies_match);

    CHECK_THROWS_AS(residue_profile(Polynomial(f7, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(residue_profile(Polynomial(f7, {2, 0, 0, 1})), std::invalid_argument);
}

TEST_CASE("residue profile tallies across family members") {
    for (u64 p : {11ull, 13ull, 17ull}) {
        PrimeCtx ctx(p);
        for (FamilyVariant v : {FamilyVariant::I, FamilyVariant::II})
            for (u64 shift : {u64(0), u64(2)}) {
                ResidueProfile prof = residue_profile(make_family(ctx, v, FamilySign::Plus, shift));
                CHECK(prof.r_in_admissible_pair);
                CHECK(prof.tallies_match);
                CHECK(prof.m_c_minus_p == prof.c);
                CHECK(prof.m_c == p - prof.c);
            }
    }
}

TEST_CASE("orbit canonicalization") {
    PrimeCtx f7(7);
    Polynomial cubic(f7, {1, 0, 0, 1});
    Polynomial shifted = affine_substitute(cubic, 1, 2);  // (x+2)^3 + 1
    CHECK(canonicalize_orbit(cubic) == canonicalize_orbit(shifted));
    Polynomial negated(f7, {1, 0, 0, 6});  // -x^3 + 1, linked by x -> 3x
    CHECK(canonicalize_orbit(cubic) == canonicalize_orbit(negated));
    CHECK_THROWS_AS(canonicalize_orbit(Polynomial::constant(f7, 1)), std::invalid_argument);

    std::mt19937_64 rng(21);
    PrimeCtx f13(13);
    for (int i = 0; i < 100; ++i) {
        Polynomial P = random_nonconstant(f13, rng);
        Polynomial canon = canonicalize_orbit(P);
        CHECK(canonicalize_orbit(canon) == canon);
        u64 a = rng() % 12 + 1, b = rng() % 13;
        CHECK(canonicalize_orbit(affine_substitute(P, a, b)) == canon);
    }
}

TEST_CASE("family membership") {
    PrimeCtx f7(7);
    CHECK(family_membership(Polynomial(f7, {1, 0, 0, 1})) == Family::I);
    CHECK(family_membership(Polynomial(f7, {4, 0, 0, 4})) == Family::II);
    CHECK(family_membership(make_family(f7, FamilyVariant::I, FamilySign::Plus, 2)) == Family::I);
    CHECK_THROWS_AS(family_membership(Polynomial(f7, {1, 1})), std::invalid_argument);

    std::mt19937_64 rng(8);
    for (u64 p : {11ull, 13ull}) {
        PrimeCtx ctx(p);
        for (FamilyVariant v : {FamilyVariant::I, FamilyVariant::II}) {
            Family expect = v == FamilyVariant::I ? Family::I : Family::II;
            Polynomial P = make_family(ctx, v, FamilySign::Minus, rng() % p);
            CHECK(family_membership(P) == expect);
            u64 a = rng() % (p - 1) + 1, b = rng() % p;
            CHECK(family_membership(affine_substitute(P, a, b)) == expect);
        }
    }
}

TEST_CASE("support-degree check") {
    PrimeCtx f7(7);
    SupportDegreeReport r = support_degree_check(Polynomial(f7, {1, 0, 0, 1}));
    CHECK(r.support_size == 4);
    CHECK(r.degree == 3);
    CHECK(r.holds);
    SupportDegreeReport r2 = support_degree_check(Polynomial(f7, {4, 0, 0, 4}));
    CHECK(r2.support_size == 4);
    CHECK(r2.holds);
    CHECK_THROWS_AS(support_degree_check(Polynomial::constant(f7, 1)), std::invalid_argument);
}

TEST_CASE("naive enumeration at p=5 finds exactly the two families") {
    PrimeCtx f5(5);
    ClassifyOptions opts;
    ClassificationResult res = enumerate_naive(f5, opts);
    CHECK(res.orbits.size() == 2);
    CHECK(res.other_count == 0);
    CHECK(res.candidates_scanned == 4 * 5 * 5);
    std::set<std::vector<u64>> expect{
        canonicalize_orbit(make_family(f5, FamilyVariant::I, FamilySign::Plus, 0)).coeffs(),
        canonicalize_orbit(make_family(f5, FamilyVariant::II, FamilySign::Plus, 0)).coeffs()};
    CHECK(orbit_coeff_set(res) == expect);
    std::set<Family> fams;
    for (const auto& o : res.orbits) {
        fams.insert(o.family);
        CHECK(o.distinct_roots_ok);
        CHECK(o.residue_tallies_ok);
        CHECK(o.lc_class_ok);
        CHECK(o.power_sum_ok);
    }
    CHECK(fams == std::set<Family>{Family::I, Family::II});
}

TEST_CASE("naive enumeration at p=7 contains both family orbits") {
    PrimeCtx f7(7);
    ClassificationResult res = enumerate_naive(f7, {});
    auto set = orbit_coeff_set(res);
    CHECK(set.count(canonicalize_orbit(Polynomial(f7, {1, 0, 0, 1})).coeffs()) == 1);
    CHECK(set.count(canonicalize_orbit(Polynomial(f7, {4, 0, 0, 4})).coeffs()) == 1);
    CHECK(res.other_count == 0);
}

TEST_CASE("degenerate p=3: one orbit of linear polynomials") {
    PrimeCtx f3(3);
    ClassificationResult res = enumerate_naive(f3, {});
    CHECK(res.orbits.size() == 1);
    CHECK(res.survivor_count == 6);  // every linear polynomial qualifies
    CHECK(res.orbits.front().found_count == 6);
}

TEST_CASE("rootsets equals naive at p in {5, 7}") {
    for (u64 p : {5ull, 7ull}) {
        PrimeCtx ctx(p);
        ClassifyOptions naive_opts, root_opts;
        naive_opts.strategy = Strategy::Naive;
        root_opts.strategy = Strategy::Rootsets;
        CHECK(orbit_coeff_set(enumerate_naive(ctx, naive_opts)) ==
              orbit_coeff_set(enumerate_rootsets(ctx, root_opts)));
    }
}

TEST_CASE("rootsets with a pinned leading coefficient") {
    PrimeCtx f7(7);
    ClassifyOptions opts;
    opts.lc_only = 1;
    ClassificationResult res = enumerate_rootsets(f7, opts);
    CHECK(res.orbits.size() == 1);
    CHECK(res.orbits.front().family == Family::I);

    opts.lc_only = 5;  // outside [1, (p-1)/2]
    CHECK_THROWS_AS(enumerate_rootsets(f7, opts), std::invalid_argument);
}

TEST_CASE("rootsets honors threading deterministically") {
    PrimeCtx ctx(13);
    ClassifyOptions one, four;
    one.threads = 1;
    four.threads = 4;
    ClassificationResult a = enumerate_rootsets(ctx, one);
    ClassificationResult b = enumerate_rootsets(ctx, four);
    CHECK(orbit_coeff_set(a) == orbit_coeff_set(b));
    CHECK(a.survivor_count == b.survivor_count);
}

TEST_CASE("budget is enforced") {
    PrimeCtx f17(17);
    ClassifyOptions opts;
    CHECK_THROWS_AS(enumerate_naive(f17, opts), BudgetExceeded);
    PrimeCtx f61(61);
    CHECK_THROWS_AS(enumerate_rootsets(f61, opts), BudgetExceeded);
}

TEST_CASE("lower-degree scan finds nothing below (p-1)/2") {
    PrimeCtx f7(7);
    ClassifyOptions opts;
    opts.scan_lower_degrees = true;
    ClassificationResult res = enumerate_naive(f7, opts);
    CHECK(res.scanned_lower_degrees);
    CHECK(res.lower_degree_survivors == 0);
    CHECK(res.other_count == 0);
}

TEST_CASE("range sum multiple 2 at p=7 finds the quadratic orbits") {
    PrimeCtx f7(7);
    ClassifyOptions opts;
    opts.range_sum_multiple = 2;
    ClassificationResult res = enumerate_naive(f7, opts);
    auto set = orbit_coeff_set(res);
    // (x-1)(x-2)+1 and (x-1)(x-2)+2 have range sum 14
    Polynomial q1(f7, {3, 4, 1});
    Polynomial q2(f7, {4, 4, 1});
    CHECK(range_profile(q1).range_sum == 14);
    CHECK(range_profile(q2).range_sum == 14);
    CHECK(set.count(canonicalize_orbit(q1).coeffs()) == 1);
    CHECK(set.count(canonicalize_orbit(q2).coeffs()) == 1);
    CHECK(canonicalize_orbit(q1).coeffs() != canonicalize_orbit(q2).coeffs());

    CHECK_THROWS_AS(enumerate_rootsets(f7, opts), std::invalid_argument);
}

TEST_CASE("name helpers") {
    CHECK(std::string(family_name(Family::I)) == "i");
    CHECK(std::string(family_name(Family::II)) == "ii");
    CHECK(std::string(family_name(Family::Other)) == "other");
    CHECK(std::string(strategy_name(Strategy::Naive)) == "naive");
    CHECK(std::string(strategy_name(Strategy::Rootsets)) == "rootsets");
}

}  // TEST_SUITE
