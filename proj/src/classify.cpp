#include "redeilab/classify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

namespace redeilab {

namespace {

constexpr u64 kCountCap = u64(1) << 62;

// C(n, k) saturated at kCountCap; exact below it.
u64 binom_sat(u64 n, u64 k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kCountCap) return kCountCap;
    }
    return static_cast<u64>(r);
}

// Exact Pascal table, rows 0..n, cols 0..k. Only built for in-budget scans.
std::vector<std::vector<u64>> binom_table(u64 n, u64 k) {
    std::vector<std::vector<u64>> b(n + 1, std::vector<u64>(k + 1, 0));
    for (u64 i = 0; i <= n; ++i) {
        b[i][0] = 1;
        for (u64 j = 1; j <= std::min(i, k); ++j)
            b[i][j] = std::min(b[i - 1][j - 1] + (j <= i - 1 ? b[i - 1][j] : 0), kCountCap);
    }
    return b;
}

// Colexicographic order on m-subsets of [0, n), stored as increasing vectors.
bool colex_next(std::vector<u64>& s, u64 n) {
    const u64 m = s.size();
    for (u64 j = 0; j < m; ++j) {
        u64 limit = (j + 1 < m) ? s[j + 1] : n;
        if (s[j] + 1 < limit) {
            ++s[j];
            for (u64 i = 0; i < j; ++i) s[i] = i;
            return true;
        }
    }
    return false;
}

void colex_unrank(std::vector<u64>& s, u64 m, u64 rank, const std::vector<std::vector<u64>>& binom) {
    s.resize(m);
    for (u64 i = m; i >= 1; --i) {
        u64 v = i - 1;
        while (binom[v + 1][i] <= rank) ++v;
        s[i - 1] = v;
        rank -= binom[v][i];
    }
}

struct OrbitAccum {
    u64 found_count = 0;
};
using OrbitMap = std::map<std::vector<u64>, OrbitAccum>;

void merge_survivor(OrbitMap& orbits, const Polynomial& survivor) {
    orbits[canonicalize_orbit(survivor).coeffs()].found_count += 1;
}

ClassificationResult finalize(const PrimeCtx& ctx, Strategy strategy, u64 target, OrbitMap&& orbits,
                              u64 candidates, u64 survivors, double ms) {
    ClassificationResult res;
    res.p = ctx.p();
    res.strategy = strategy;
    res.range_sum_target = target;
    res.candidates_scanned = candidates;
    res.survivor_count = survivors;
    res.enumeration_ms = ms;
    const bool structural = (target == ctx.p());
    for (auto& [coeffs, acc] : orbits) {
        OrbitReport rep;
        rep.coeffs = coeffs;
        Polynomial P(ctx, coeffs);
        rep.lc = P.leading_coeff();
        rep.roots = range_profile(P).roots;
        rep.found_count = acc.found_count;
        if (structural && P.degree() == static_cast<i64>(ctx.half())) {
            rep.checks_ran = true;
            rep.family = family_membership(P);
            rep.distinct_roots_ok = rep.roots.size() == ctx.half();
            ResidueProfile prof = residue_profile(P);
            rep.residue_tallies_ok = prof.r_in_admissible_pair && prof.tallies_match;
            u64 norm = std::min(rep.lc, ctx.p() - rep.lc);
            rep.lc_class_ok = (norm == 1 || norm == ctx.half());
            rep.power_sum_ok = power_sum_identity_check(P, ctx.half()).holds;
        }
        if (rep.family == Family::Other) ++res.other_count;
        res.orbits.push_back(std::move(rep));
    }
    return res;
}

}  // namespace

ResidueProfile residue_profile(const Polynomial& P) {
    const PrimeCtx& ctx = P.ctx();
    const u64 p = ctx.p();
    if (P.degree() != static_cast<i64>(ctx.half()))
        throw std::invalid_argument("residue_profile: degree must be (p-1)/2");
    RangeProfile rp = range_profile(P);
    if (rp.range_sum != p) throw std::invalid_argument("residue_profile: range sum must be p");

    ResidueProfile prof;
    prof.c = P.leading_coeff();
    prof.s_roots.resize(p);
    prof.s_excess.resize(p);
    prof.r.resize(p);
    const i64 c = static_cast<i64>(prof.c);
    for (u64 g = 0; g < p; ++g) {
        i64 sr = 0, se = 0;
        for (u64 a : rp.roots) sr += ctx.legendre(ctx.sub(a, g));
        for (u64 b : rp.excess) se += ctx.legendre(ctx.sub(b, g));
        prof.s_roots[g] = sr;
        prof.s_excess[g] = se;
        i64 r = sr - se;
        prof.r[g] = r;
        if (r == c)
            ++prof.m_c;
        else if (r == c - static_cast<i64>(p))
            ++prof.m_c_minus_p;
        else
            prof.r_in_admissible_pair = false;
    }
    prof.tallies_match =
        prof.r_in_admissible_pair && prof.m_c_minus_p == prof.c && prof.m_c == p - prof.c;
    return prof;
}

Polynomial canonicalize_orbit(const Polynomial& P) {
    const PrimeCtx& ctx = P.ctx();
    const u64 p = ctx.p();
    if (P.degree() < 1) throw std::invalid_argument("canonicalize_orbit: constant polynomial");
    const std::size_t n = P.coeffs().size();

    std::vector<u64> best;  // high-to-low key
    std::vector<u64> cand(n);
    for (u64 b = 0; b < p; ++b) {
        // P(x + b) once per shift, then scale x -> a*x coefficientwise.
        Polynomial shifted = affine_substitute(P, 1, b);
        const auto& q = shifted.coeffs();
        for (u64 a = 1; a < p; ++a) {
            u64 pw = 1;
            for (std::size_t k = 0; k < n; ++k) {
                cand[n - 1 - k] = ctx.mul(q[k], pw);
                pw = ctx.mul(pw, a);
            }
            if (best.empty() || cand < best) best = cand;
        }
    }
    std::reverse(best.begin(), best.end());
    return Polynomial(ctx, std::move(best));
}

const char* family_name(Family f) noexcept {
    switch (f) {
        case Family::I: return "i";
        case Family::II: return "ii";
        default: return "other";
    }
}

const char* strategy_name(Strategy s) noexcept {
    return s == Strategy::Naive ? "naive" : "rootsets";
}

namespace {

struct FamilyForms {
    std::vector<u64> canon_i;
    std::vector<u64> canon_ii;
};

const FamilyForms& family_forms(const PrimeCtx& ctx) {
    static std::mutex mu;
    static std::map<u64, FamilyForms> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(ctx.p());
    if (it == cache.end()) {
        FamilyForms f;
        f.canon_i = canonicalize_orbit(make_family(ctx, FamilyVariant::I, FamilySign::Plus, 0)).coeffs();
        f.canon_ii = canonicalize_orbit(make_family(ctx, FamilyVariant::II, FamilySign::Plus, 0)).coeffs();
        it = cache.emplace(ctx.p(), std::move(f)).first;
    }
    return it->second;
}

}  // namespace

Family family_membership(const Polynomial& P) {
    const PrimeCtx& ctx = P.ctx();
    if (P.degree() != static_cast<i64>(ctx.half()))
        throw std::invalid_argument("family_membership: degree must be (p-1)/2");
    if (range_profile(P).range_sum != ctx.p())
        throw std::invalid_argument("family_membership: range sum must be p");
    const FamilyForms& forms = family_forms(ctx);
    std::vector<u64> canon = canonicalize_orbit(P).coeffs();
    if (canon == forms.canon_i) return Family::I;
    if (canon == forms.canon_ii) return Family::II;
    return Family::Other;
}

SupportDegreeReport support_degree_check(const Polynomial& P) {
    if (P.is_constant()) throw std::invalid_argument("support_degree_check: constant polynomial");
    RangeProfile rp = range_profile(P);
    if (rp.range_sum != P.p()) throw std::invalid_argument("support_degree_check: range sum must be p");
    SupportDegreeReport rep;
    rep.support_size = P.p() - rp.roots.size();
    rep.degree = P.degree();
    rep.holds = rep.degree >= static_cast<i64>(rep.support_size) - 1;
    return rep;
}

ClassificationResult enumerate_naive(const PrimeCtx& ctx, const ClassifyOptions& opts) {
    const u64 p = ctx.p();
    const u64 half = ctx.half();
    const u64 mult = opts.range_sum_multiple;
    if (mult == 0) throw std::invalid_argument("enumerate_naive: range sum multiple must be >= 1");
    const u64 target = mult * p;

    std::vector<u64> degrees;
    if (mult == 1 && !opts.scan_lower_degrees) {
        degrees.push_back(half);
    } else {
        for (u64 d = 1; d <= half; ++d) degrees.push_back(d);
    }

    u64 total_candidates = 0;
    for (u64 d : degrees) {
        u64 tuples = p - 1;  // (p-1) * p^d choices of (a_0, .., a_d), a_d != 0
        for (u64 i = 0; i < d; ++i) {
            if (tuples > kCountCap / p) { tuples = kCountCap; break; }
            tuples *= p;
        }
        total_candidates = (total_candidates > kCountCap - tuples) ? kCountCap : total_candidates + tuples;
    }
    if (total_candidates > opts.candidate_budget)
        throw BudgetExceeded("enumerate_naive: candidate count exceeds budget");

    auto t0 = std::chrono::steady_clock::now();
    OrbitMap orbits;
    u64 survivors = 0, lower_survivors = 0;

    for (u64 deg : degrees) {
        std::vector<std::vector<u64>> powx(deg + 1, std::vector<u64>(p));
        for (u64 x = 0; x < p; ++x) powx[1][x] = x;
        for (u64 j = 2; j <= deg; ++j)
            for (u64 x = 0; x < p; ++x) powx[j][x] = ctx.mul(powx[j - 1][x], x);

        std::vector<u64> digit(deg + 1, 0);  // digit[j] = a_j for j = 1..deg
        digit[deg] = 1;
        std::vector<u64> V(powx[deg]);  // values of sum_{j>=1} a_j x^j
        std::vector<u64> cnt(p + 1), suf(p + 1);

        bool done = false;
        while (!done) {
            std::fill(cnt.begin(), cnt.end(), 0);
            u64 S = 0;
            for (u64 x = 0; x < p; ++x) {
                ++cnt[V[x]];
                S += V[x];
            }
            suf[p] = 0;
            for (u64 v = p; v-- > 0;) suf[v] = suf[v + 1] + cnt[v];
            for (u64 a0 = 0; a0 < p; ++a0) {
                // lifted integer sum of (V[x] + a0 mod p) over all x
                u64 sum = S + p * a0 - p * (a0 == 0 ? 0 : suf[p - a0]);
                if (sum == target) {
                    std::vector<u64> coeffs(deg + 1);
                    coeffs[0] = a0;
                    for (u64 j = 1; j <= deg; ++j) coeffs[j] = digit[j];
                    Polynomial P(ctx, std::move(coeffs));
                    if (deg < half && mult == 1) {
                        ++lower_survivors;
                    } else {
                        ++survivors;
                        merge_survivor(orbits, P);
                    }
                }
            }
            // Odometer step. A digit wrap p-1 -> 0 is one more +x^j mod p,
            // so V stays consistent through carries.
            for (u64 j = 1;; ++j) {
                ++digit[j];
                const std::vector<u64>& pw = powx[j];
                for (u64 x = 0; x < p; ++x) V[x] = ctx.add(V[x], pw[x]);
                if (digit[j] < p) break;
                digit[j] = 0;
                if (j == deg) { done = true; break; }
            }
        }
    }

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ClassificationResult res =
        finalize(ctx, Strategy::Naive, target, std::move(orbits), total_candidates, survivors, ms);
    res.scanned_lower_degrees = degrees.size() > 1 && mult == 1;
    res.lower_degree_survivors = lower_survivors;
    return res;
}

ClassificationResult enumerate_rootsets(const PrimeCtx& ctx, const ClassifyOptions& opts) {
    const u64 p = ctx.p();
    const u64 half = ctx.half();
    if (opts.range_sum_multiple != 1)
        throw std::invalid_argument("enumerate_rootsets: range sum multiples require the naive strategy");
    if (opts.scan_lower_degrees)
        throw std::invalid_argument("enumerate_rootsets: lower-degree scan requires the naive strategy");

    u64 c_lo = 1, c_hi = half;
    if (opts.lc_only) {
        if (*opts.lc_only < 1 || *opts.lc_only > half)
            throw std::invalid_argument(
                "enumerate_rootsets: leading coefficient outside the normalized range [1,(p-1)/2]");
        c_lo = c_hi = *opts.lc_only;
    }

    const u64 m = half - 1;  // roots besides the pinned 0
    const u64 n = p - 1;     // universe {1..p-1}, stored 0-based
    const u64 subsets = binom_sat(n, m);
    const u64 c_count = c_hi - c_lo + 1;
    if (subsets >= kCountCap || subsets > opts.candidate_budget / c_count)
        throw BudgetExceeded("enumerate_rootsets: candidate count exceeds budget");
    const u64 total_candidates = subsets * c_count;

    auto t0 = std::chrono::steady_clock::now();
    auto binom = binom_table(n, std::max<u64>(m, 1));

    unsigned threads = std::max(1u, opts.threads);
    threads = static_cast<unsigned>(std::min<u64>(threads, subsets));

    std::vector<std::vector<std::vector<u64>>> found(threads);  // per-worker survivor coeffs

    auto worker = [&](unsigned w) {
        const u64 lo = static_cast<u64>(u128(subsets) * w / threads);
        const u64 hi = static_cast<u64>(u128(subsets) * (w + 1) / threads);
        if (lo >= hi) return;
        std::vector<u64> sub;
        colex_unrank(sub, m, lo, binom);
        std::vector<u64> roots(half);
        std::vector<char> is_root(p);
        std::vector<u64> nonroot_vals(p);
        for (u64 rank = lo; rank < hi; ++rank) {
            roots[0] = 0;
            for (u64 i = 0; i < m; ++i) roots[i + 1] = sub[i] + 1;
            std::fill(is_root.begin(), is_root.end(), 0);
            for (u64 r : roots) is_root[r] = 1;

            u64 cnt_nr = 0;
            for (u64 x = 0; x < p; ++x) {
                if (is_root[x]) continue;
                u64 v = 1;
                for (u64 r : roots) v = ctx.mul(v, ctx.sub(x, r));
                nonroot_vals[cnt_nr++] = v;
            }
            for (u64 c = c_lo; c <= c_hi; ++c) {
                u64 sum = 0;
                for (u64 i = 0; i < cnt_nr; ++i) {
                    sum += ctx.mul(c, nonroot_vals[i]);
                    if (sum > p) break;
                }
                if (sum == p) found[w].push_back(from_roots(ctx, c, roots).coeffs());
            }
            if (rank + 1 < hi) colex_next(sub, n);
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    OrbitMap orbits;
    u64 survivors = 0;
    for (auto& list : found)
        for (auto& coeffs : list) {
            ++survivors;
            merge_survivor(orbits, Polynomial(ctx, coeffs));
        }

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return finalize(ctx, Strategy::Rootsets, p, std::move(orbits), total_candidates, survivors, ms);
}

}  // namespace redeilab
