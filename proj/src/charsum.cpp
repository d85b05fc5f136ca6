#include "redeilab/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace redeilab {

namespace {

void check_subset(const PrimeCtx& ctx, std::span<const u64> subset) {
    if (subset.empty()) throw std::invalid_argument("shift profile: empty subset");
    for (u64 c : subset)
        if (c >= ctx.p()) throw std::invalid_argument("shift profile: element out of range");
}

void check_half_subset(const PrimeCtx& ctx, std::span<const u64> subset) {
    check_subset(ctx, subset);
    if (subset.size() != ctx.half())
        throw std::invalid_argument("expected a subset of size (p-1)/2");
}

// Strict |x| < s*sqrt(p) for integers, via one squaring.
bool below_sqrt_bound(i64 x, u64 s, u64 p) {
    if (x < 0) x = -x;
    u128 lhs = u128(x) * u128(x);
    u128 rhs = u128(s) * u128(s) * p;
    return lhs < rhs;
}

void check_distinct_shifts(const PrimeCtx& ctx, std::span<const u64> shifts) {
    std::vector<u64> v(shifts.begin(), shifts.end());
    for (u64& s : v) s %= ctx.p();
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw std::invalid_argument("shifts must be distinct mod p");
}

}  // namespace

ShiftProfile shift_profile(const PrimeCtx& ctx, std::span<const u64> subset, unsigned threads) {
    check_subset(ctx, subset);
    const u64 p = ctx.p();
    ShiftProfile prof;
    prof.t.assign(p, 0);

    auto run = [&](u64 lo, u64 hi) {
        for (u64 g = lo; g < hi; ++g) {
            i64 s = 0;
            for (u64 c : subset) s += ctx.legendre(ctx.sub(c, g));
            prof.t[g] = s;
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || p < 4 * threads) {
        run(0, p);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(run, p * w / threads, p * (w + 1) / threads);
        for (auto& t : pool) t.join();
    }

    for (u64 g = 0; g < p; ++g) {
        i64 a = prof.t[g] < 0 ? -prof.t[g] : prof.t[g];
        if (a > prof.max_abs) {
            prof.max_abs = a;
            prof.argmax = g;
        }
    }
    return prof;
}

PaleyTable paley_table(const PrimeCtx& ctx, int gamma_class) {
    if (gamma_class != 1 && gamma_class != -1)
        throw std::invalid_argument("paley_table: gamma class must be +1 or -1");
    const u64 p = ctx.p();

    auto count_for = [&](u64 gamma) {
        PaleyTable tab;
        tab.p = p;
        tab.gamma_class = gamma_class;
        tab.gamma = gamma;
        for (u64 a = 0; a < p; ++a) {
            int e1 = ctx.legendre(a);
            int e2 = ctx.legendre(ctx.add(a, gamma));
            if (e1 == 0 || e2 == 0) continue;
            tab.counts[e1 == 1 ? 0 : 1][e2 == 1 ? 0 : 1] += 1;
        }
        return tab;
    };

    PaleyTable result;
    bool have = false;
    for (u64 gamma = 1; gamma < p; ++gamma) {
        if (ctx.legendre(gamma) != gamma_class) continue;
        if (!have) {
            result = count_for(gamma);
            have = true;
            if (p > 101) break;
        } else {
            // Representative independence, checked exhaustively for small p.
            if (!(count_for(gamma) == result))
                throw std::logic_error("paley_table: counts depend on the representative");
        }
    }
    if (!have) throw std::invalid_argument("paley_table: no representative of the class exists");
    return result;
}

PaleyTable paley_closed_form(u64 p, int gamma_class) {
    PaleyTable tab;
    tab.p = p;
    tab.gamma_class = gamma_class;
    const int chi_gamma = gamma_class;
    const int chi_minus_1 = (p % 4 == 1) ? 1 : -1;
    const int chi_minus_gamma = chi_minus_1 * chi_gamma;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            int e1 = i == 0 ? 1 : -1;
            int e2 = j == 0 ? 1 : -1;
            i64 num = static_cast<i64>(p) - 2 - e1 * chi_minus_gamma - e2 * chi_gamma - e1 * e2;
            tab.counts[i][j] = static_cast<u64>(num / 4);
        }
    return tab;
}

UniqueLargeShiftReport unique_large_shift_check(const PrimeCtx& ctx, std::span<const u64> subset) {
    check_half_subset(ctx, subset);
    const u64 p = ctx.p();
    ShiftProfile prof = shift_profile(ctx, subset);

    UniqueLargeShiftReport rep;
    rep.max_abs = prof.max_abs;
    rep.argmax = prof.argmax;
    for (u64 g = 0; g < p; ++g) {
        i64 a = prof.t[g] < 0 ? -prof.t[g] : prof.t[g];
        u64 four_a = static_cast<u64>(4 * a);
        if (four_a >= p - 1) rep.large_gammas.push_back(g);
        if (four_a == p - 1) rep.boundary = true;
    }
    rep.unique_large = rep.large_gammas.size() <= 1;

    // Cap clause: with max = (p-1)/4 + t (t > 0), every other shift must obey
    // |T| <= (p-1)/4 - t + 1, i.e. 2*(|T| + max) <= p + 1.
    rep.cap_triggered = static_cast<u64>(4 * prof.max_abs) > p - 1;
    if (rep.cap_triggered) {
        for (u64 g = 0; g < p; ++g) {
            if (g == prof.argmax) continue;
            i64 a = prof.t[g] < 0 ? -prof.t[g] : prof.t[g];
            if (2 * static_cast<u64>(a + prof.max_abs) > p + 1) {
                rep.cap_holds = false;
                break;
            }
        }
    }
    return rep;
}

SignPatternReport weil_sign_patterns(const PrimeCtx& ctx, std::span<const u64> shifts) {
    const u64 p = ctx.p();
    const u64 m = shifts.size();
    if (m == 0) throw std::invalid_argument("weil_sign_patterns: need at least one shift");
    if (p >= (u64(1) << 40))
        throw std::invalid_argument("weil_sign_patterns: p too large for the exact bound check");
    check_distinct_shifts(ctx, shifts);
    // Premise: 2^{m-1} * m < sqrt(p) - 1, compared as (2^{m-1}*m + 1)^2 < p.
    if (m > 26 || ((u64(1) << (m - 1)) * m + 1) * ((u64(1) << (m - 1)) * m + 1) >= p)
        throw std::invalid_argument("weil_sign_patterns: premise 2^{m-1}*m < sqrt(p)-1 fails");

    SignPatternReport rep;
    rep.m = m;
    rep.counts.assign(u64(1) << m, 0);
    for (u64 y = 0; y < p; ++y) {
        u64 mask = 0;
        bool zero_symbol = false;
        for (u64 i = 0; i < m; ++i) {
            int w = ctx.legendre(ctx.add(y, shifts[i] % p));
            if (w == 0) { zero_symbol = true; break; }
            if (w == 1) mask |= u64(1) << i;
        }
        if (!zero_symbol) rep.counts[mask] += 1;
    }

    // |N(v) - p/2^m| < m*(sqrt(p)+1)/2  <=>  2*|2^m*N - p| - 2^m*m < 2^m*m*sqrt(p)
    const u64 pow2 = u64(1) << m;
    rep.bound_value = double(m) * (std::sqrt(double(p)) + 1.0) / 2.0;
    for (u64 v = 0; v < pow2; ++v) {
        i64 diff = static_cast<i64>(pow2 * rep.counts[v]) - static_cast<i64>(p);
        if (diff < 0) diff = -diff;
        i64 l = 2 * diff - static_cast<i64>(pow2 * m);
        bool ok = l < 0 || below_sqrt_bound(l, pow2 * m, p);
        rep.bound_ok.push_back(ok);
        if (!ok) rep.all_bounds_hold = false;
    }
    return rep;
}

CellSizeReport translate_cell_sizes(const PrimeCtx& ctx, std::span<const u64> shifts) {
    const u64 p = ctx.p();
    const u64 t = shifts.size();
    if (t == 0) throw std::invalid_argument("translate_cell_sizes: need at least one shift");
    if (p >= (u64(1) << 40))
        throw std::invalid_argument("translate_cell_sizes: p too large for the exact bound check");
    check_distinct_shifts(ctx, shifts);
    // t < 0.5*log2(p), i.e. 4^t < p.
    if (t >= 31 || (u64(1) << (2 * t)) >= p)
        throw std::invalid_argument("translate_cell_sizes: t must satisfy 4^t < p");

    CellSizeReport rep;
    rep.t = t;
    rep.sizes.assign(u64(1) << t, 0);
    for (u64 a = 0; a < p; ++a) {
        u64 mask = 0;
        for (u64 i = 0; i < t; ++i)
            if (ctx.legendre(ctx.sub(a, shifts[i] % p)) == 1) mask |= u64(1) << i;
        rep.sizes[mask] += 1;
    }

    // cell < p/2^t + t*(sqrt(p)+1)/2  <=>  2^{t+1}*cell - 2p - 2^t*t < 2^t*t*sqrt(p)
    const u64 pow2 = u64(1) << t;
    rep.bound_value = double(p) / double(pow2) + double(t) * (std::sqrt(double(p)) + 1.0) / 2.0;
    for (u64 mask = 0; mask < pow2; ++mask) {
        i64 l = static_cast<i64>(2 * pow2 * rep.sizes[mask]) - static_cast<i64>(2 * p) -
                static_cast<i64>(pow2 * t);
        bool ok = l < 0 || below_sqrt_bound(l, pow2 * t, p);
        rep.bound_ok.push_back(ok);
        if (!ok) rep.all_bounds_hold = false;
    }
    return rep;
}

MinIntersectionReport min_intersection_bound(const std::vector<std::vector<u64>>& sets,
                                             const std::vector<u64>& b, u64 r_hat) {
    const u64 t = sets.size();
    if (t == 0) throw std::invalid_argument("min_intersection_bound: need at least one set");
    if (r_hat < 1 || r_hat > t)
        throw std::invalid_argument("min_intersection_bound: r_hat must lie in [1, t]");

    // Ground set: union of everything mentioned.
    std::vector<u64> ground;
    for (const auto& s : sets) ground.insert(ground.end(), s.begin(), s.end());
    ground.insert(ground.end(), b.begin(), b.end());
    std::sort(ground.begin(), ground.end());
    ground.erase(std::unique(ground.begin(), ground.end()), ground.end());

    auto index_of = [&](u64 x) {
        return static_cast<std::size_t>(std::lower_bound(ground.begin(), ground.end(), x) - ground.begin());
    };

    std::vector<u64> depth(ground.size(), 0);
    std::vector<char> in_b(ground.size(), 0);
    std::vector<u64> inter(t, 0);
    for (u64 i = 0; i < t; ++i) {
        std::vector<char> seen(ground.size(), 0);
        for (u64 x : sets[i]) {
            std::size_t k = index_of(x);
            if (!seen[k]) { seen[k] = 1; ++depth[k]; }
        }
    }
    std::vector<u64> b_dedup(b);
    std::sort(b_dedup.begin(), b_dedup.end());
    b_dedup.erase(std::unique(b_dedup.begin(), b_dedup.end()), b_dedup.end());
    for (u64 x : b_dedup) in_b[index_of(x)] = 1;

    for (u64 i = 0; i < t; ++i) {
        std::vector<char> seen(ground.size(), 0);
        for (u64 x : sets[i]) {
            std::size_t k = index_of(x);
            if (!seen[k] && in_b[k]) { seen[k] = 1; ++inter[i]; }
        }
    }

    MinIntersectionReport rep;
    rep.t = t;
    rep.r_hat = r_hat;
    rep.b_size = b_dedup.size();
    rep.argmin = static_cast<std::size_t>(std::min_element(inter.begin(), inter.end()) - inter.begin());
    rep.lhs = inter[rep.argmin];

    u64 sigma = 0;
    for (u64 r = r_hat; r <= t; ++r) {
        u64 ur = 0;
        for (u64 d : depth)
            if (d >= r) ++ur;
        rep.union_sizes.push_back(ur);
        sigma += ur;
    }
    rep.proviso_lhs = rep.union_sizes.front();
    if (rep.proviso_lhs > rep.b_size)
        throw std::invalid_argument("min_intersection_bound: proviso U_{r_hat} <= |B| fails");

    rep.rhs_numerator = sigma + (r_hat - 1) * rep.b_size;
    rep.rhs = double(rep.rhs_numerator) / double(t);
    rep.holds = t * rep.lhs <= rep.rhs_numerator;
    return rep;
}

bool qr_translate_proviso_bound_holds(u64 p) {
    // 93*(p/256 + 4*(sqrt(p)+1)) < (p-1)/2
    // <=> 95232*sqrt(p) < 35p - 95360, squared once both sides are positive.
    i128 rhs = i128(35) * p - 95360;
    if (rhs <= 0) return false;
    u128 lhs_sq = u128(95232) * 95232 * p;
    u128 rhs_sq = u128(rhs) * u128(rhs);
    return lhs_sq < rhs_sq;
}

ConcentrationReport concentration_scan(const PrimeCtx& ctx, std::span<const u64> subset,
                                       u64 threshold_num, u64 threshold_den, unsigned threads) {
    check_half_subset(ctx, subset);
    if (threshold_den == 0) throw std::invalid_argument("concentration_scan: zero denominator");
    ShiftProfile prof = shift_profile(ctx, subset, threads);

    ConcentrationReport rep;
    rep.threshold_num = threshold_num;
    rep.threshold_den = threshold_den;
    const u128 rhs = u128(threshold_num) * ctx.p();
    for (u64 g = 0; g < ctx.p(); ++g) {
        i64 a = prof.t[g] < 0 ? -prof.t[g] : prof.t[g];
        if (u128(threshold_den) * static_cast<u64>(a) >= rhs) {
            ++rep.count;
            rep.witnesses.push_back(g);
        }
    }
    return rep;
}

}  // namespace redeilab
