#include "redeilab/sampling.hpp"

#include <algorithm>
#include <unordered_set>

namespace redeilab {

std::vector<u64> sample_shifts(std::mt19937_64& rng, u64 p, u64 k) {
    if (k > p) throw std::invalid_argument("sample_shifts: k > p");
    std::unordered_set<u64> seen;
    std::vector<u64> out;
    out.reserve(k);
    while (out.size() < k) {
        u64 v = uniform_below(rng, p);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

std::vector<u64> sample_subset(std::mt19937_64& rng, u64 p, u64 k) {
    std::vector<u64> out = sample_shifts(rng, p, k);
    std::sort(out.begin(), out.end());
    return out;
}

PointSet sample_noncollinear_pointset(std::mt19937_64& rng, const PrimeCtx& ctx) {
    const u64 p = ctx.p();
    for (;;) {
        std::unordered_set<u64> seen;
        std::vector<Point> pts;
        while (pts.size() < p) {
            u64 v = uniform_below(rng, p * p);
            if (seen.insert(v).second) pts.push_back({v / p, v % p});
        }
        PointSet S(ctx, std::move(pts));
        if (!collinear(S)) return S;
    }
}

}  // namespace redeilab
