#ifndef REDEILAB_SAMPLING_HPP
#define REDEILAB_SAMPLING_HPP

#include <random>

#include "redeilab/geometry.hpp"

namespace redeilab {

/// mt19937_64 is fully specified by the standard, so seeded runs reproduce
/// across platforms. Bounds are taken by modulo on purpose: determinism
/// matters here, distribution bias does not.
inline u64 uniform_below(std::mt19937_64& rng, u64 n) { return rng() % n; }

/// k distinct residues mod p, sorted.
std::vector<u64> sample_subset(std::mt19937_64& rng, u64 p, u64 k);

/// k distinct shifts, as a tuple in sampling order.
std::vector<u64> sample_shifts(std::mt19937_64& rng, u64 p, u64 k);

/// Uniform p-point subset of AG(2,p), rejection-sampled to be non-collinear.
PointSet sample_noncollinear_pointset(std::mt19937_64& rng, const PrimeCtx& ctx);

}  // namespace redeilab

#endif
