#ifndef REDEILAB_TESTS_SUPPORT_HPP
#define REDEILAB_TESTS_SUPPORT_HPP

// Test-only oracles. These stay independent of the library code paths they
// cross-check: Lagrange interpolation versus the moment-sum interpolation,
// and the pointwise quartic transform versus the grouped spectrum.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "redeilab/fourier.hpp"

namespace redeilab::test {

inline Polynomial lagrange_interpolate(const PrimeCtx& ctx, std::span<const u64> values) {
    const u64 p = ctx.p();
    std::vector<u64> acc(p, 0);
    for (u64 i = 0; i < p; ++i) {
        if (values[i] % p == 0) continue;
        std::vector<u64> num{1};
        u64 den = 1;
        for (u64 j = 0; j < p; ++j) {
            if (j == i) continue;
            num.push_back(0);
            for (std::size_t k = num.size() - 1; k-- > 0;) {
                num[k + 1] = ctx.add(num[k + 1], num[k]);
                num[k] = ctx.mul(num[k], ctx.neg(j));
            }
            den = ctx.mul(den, ctx.sub(i, j));
        }
        u64 scale = ctx.mul(values[i] % p, ctx.inv(den));
        for (std::size_t k = 0; k < num.size(); ++k)
            acc[k] = ctx.add(acc[k], ctx.mul(scale, num[k]));
    }
    return Polynomial(ctx, std::move(acc));
}

struct NaiveDirectionMagnitudes {
    double mag_min = 0.0;
    double mag_max = 0.0;  // p * |1hat| scale
};

struct NaiveSpectrum {
    std::map<u64, NaiveDirectionMagnitudes> by_slope;  // slope p = vertical
    double plancherel_residual = 0.0;
};

// The quartic definition: for every nonzero character, sum the indicator over
// the full p^2 grid.
inline NaiveSpectrum naive_spectrum(const PointSet& S) {
    const PrimeCtx& ctx = S.ctx();
    const u64 p = ctx.p();
    std::vector<char> ind(p * p, 0);
    for (const Point& q : S.points()) ind[q.x * p + q.y] = 1;

    NaiveSpectrum out;
    double sq_sum = double(S.size()) * double(S.size());
    for (u64 v1 = 0; v1 < p; ++v1)
        for (u64 v2 = 0; v2 < p; ++v2) {
            if (v1 == 0 && v2 == 0) continue;
            double re = 0.0, im = 0.0;
            for (u64 x = 0; x < p; ++x)
                for (u64 y = 0; y < p; ++y) {
                    if (!ind[x * p + y]) continue;
                    u64 dot = ctx.add(ctx.mul(x, v1), ctx.mul(y, v2));
                    double t = -2.0 * std::numbers::pi * double(dot) / double(p);
                    re += std::cos(t);
                    im += std::sin(t);
                }
            double mag = std::hypot(re, im);
            sq_sum += mag * mag;
            u64 slope = v2 == 0 ? slope_infinity(ctx) : ctx.neg(ctx.mul(v1, ctx.inv(v2)));
            auto [it, fresh] = out.by_slope.try_emplace(slope, NaiveDirectionMagnitudes{mag, mag});
            if (!fresh) {
                it->second.mag_min = std::min(it->second.mag_min, mag);
                it->second.mag_max = std::max(it->second.mag_max, mag);
            }
        }
    out.plancherel_residual = std::abs(sq_sum / double(p * p) - double(S.size()));
    return out;
}

inline std::vector<u64> odd_primes_upto(u64 n) {
    std::vector<u64> out;
    for (u64 p = 3; p <= n; p += 2)
        if (is_prime(p)) out.push_back(p);
    return out;
}

}  // namespace redeilab::test

#endif
