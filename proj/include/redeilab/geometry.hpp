#ifndef REDEILAB_GEOMETRY_HPP
#define REDEILAB_GEOMETRY_HPP

#include <compare>
#include <vector>

#include "redeilab/classify.hpp"

namespace redeilab {

struct Point {
    u64 x = 0, y = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// A set of distinct points of AG(2, p).
class PointSet {
public:
    PointSet(const PrimeCtx& ctx, std::vector<Point> pts);

    const PrimeCtx& ctx() const noexcept { return *ctx_; }
    u64 p() const noexcept { return ctx_->p(); }
    const std::vector<Point>& points() const noexcept { return pts_; }
    std::size_t size() const noexcept { return pts_.size(); }

private:
    const PrimeCtx* ctx_;
    std::vector<Point> pts_;  // sorted, distinct
};

/// Slopes are residues in [0, p); the vertical direction is encoded as p.
inline u64 slope_infinity(const PrimeCtx& ctx) noexcept { return ctx.p(); }

/// Slopes dy/dx over all point pairs (dx == 0 encoded as p). Sorted.
std::vector<u64> direction_set(const PointSet& S);

bool collinear(const PointSet& S);

/// Number of points on each line of the given slope, indexed by intercept
/// (by x-coordinate for the vertical class). Plain integer counts.
std::vector<u64> line_counts(const PointSet& S, u64 slope);

/// Reduced polynomial through the line counts taken mod p.
Polynomial projection_polynomial(const PointSet& S, u64 slope);

/// {(0,q) : q nonzero square} ∪ {(q,0) : q nonzero square} ∪ {(0,0)};
/// exactly p points determining (p+3)/2 directions.
PointSet ls_set(const PrimeCtx& ctx);

/// For every slope whose projection polynomial has degree d in [1, p-2],
/// the set must determine at least d+2 directions. Requires |S| = p.
struct DirectionDegreeReport {
    bool holds = true;
    std::size_t direction_count = 0;
    u64 tightest_slope = 0;    // slope with the largest such degree
    i64 tightest_degree = -1;  // -1 when every projection is constant/zero
    std::vector<u64> violating_slopes;
};
DirectionDegreeReport direction_degree_check(const PointSet& S);

enum class SlopeClass { Constant, FamilyI, FamilyII, Other };
const char* slope_class_name(SlopeClass c) noexcept;

struct SlopeCensusEntry {
    u64 slope = 0;
    bool determined = false;
    SlopeClass cls = SlopeClass::Other;
    i64 degree = -1;
    u64 lc = 0;
};

struct CensusReport {
    u64 p = 0;
    std::vector<SlopeCensusEntry> entries;  // all p+1 slopes, vertical last
    u64 constants = 0, family_i = 0, family_ii = 0, other = 0;
    std::size_t direction_count = 0;
    // Expected profile of the construction above:
    u64 expected_constants = 0;      // (p-1)/2
    u64 expected_family_ii = 2;
    u64 expected_family_i = 0;       // (p+3)/2 - 2
    u64 alt_expected_constants = 0;  // (p-5)/2, reported for comparison only
    bool matches_expected = false;
    bool matches_alt = false;
};

/// Per-slope classification of any p-point set.
CensusReport slope_census(const PointSet& S);

/// slope_census of ls_set(ctx), with the expected-profile fields filled in.
CensusReport ls_profile_census(const PrimeCtx& ctx);

}  // namespace redeilab

#endif
