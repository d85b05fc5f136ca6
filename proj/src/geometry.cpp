#include "redeilab/geometry.hpp"

#include <algorithm>

namespace redeilab {

PointSet::PointSet(const PrimeCtx& ctx, std::vector<Point> pts) : ctx_(&ctx), pts_(std::move(pts)) {
    for (Point& q : pts_) {
        q.x %= ctx.p();
        q.y %= ctx.p();
    }
    std::sort(pts_.begin(), pts_.end());
    if (std::adjacent_find(pts_.begin(), pts_.end()) != pts_.end())
        throw std::invalid_argument("PointSet: duplicate point");
}

std::vector<u64> direction_set(const PointSet& S) {
    const PrimeCtx& ctx = S.ctx();
    if (S.size() < 2) throw std::invalid_argument("direction_set: need at least two points");
    std::vector<char> seen(ctx.p() + 1, 0);
    const auto& pts = S.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            u64 dx = ctx.sub(pts[i].x, pts[j].x);
            u64 dy = ctx.sub(pts[i].y, pts[j].y);
            u64 slope = dx == 0 ? slope_infinity(ctx) : ctx.mul(dy, ctx.inv(dx));
            seen[slope] = 1;
        }
    std::vector<u64> dirs;
    for (u64 s = 0; s <= ctx.p(); ++s)
        if (seen[s]) dirs.push_back(s);
    return dirs;
}

bool collinear(const PointSet& S) {
    const auto& pts = S.points();
    if (pts.size() <= 2) return true;
    const PrimeCtx& ctx = S.ctx();
    u64 dx = ctx.sub(pts[1].x, pts[0].x);
    u64 dy = ctx.sub(pts[1].y, pts[0].y);
    for (std::size_t i = 2; i < pts.size(); ++i) {
        u64 ex = ctx.sub(pts[i].x, pts[0].x);
        u64 ey = ctx.sub(pts[i].y, pts[0].y);
        if (ctx.mul(dy, ex) != ctx.mul(dx, ey)) return false;
    }
    return true;
}

std::vector<u64> line_counts(const PointSet& S, u64 slope) {
    const PrimeCtx& ctx = S.ctx();
    if (slope > ctx.p()) throw std::invalid_argument("line_counts: slope out of range");
    std::vector<u64> counts(ctx.p(), 0);
    if (slope == slope_infinity(ctx)) {
        for (const Point& q : S.points()) ++counts[q.x];
    } else {
        // point (x, y) lies on y = slope*x + i with i = y - slope*x
        for (const Point& q : S.points()) ++counts[ctx.sub(q.y, ctx.mul(slope, q.x))];
    }
    return counts;
}

Polynomial projection_polynomial(const PointSet& S, u64 slope) {
    std::vector<u64> counts = line_counts(S, slope);
    for (u64& c : counts) c %= S.p();
    return interpolate(S.ctx(), counts);
}

PointSet ls_set(const PrimeCtx& ctx) {
    std::vector<Point> pts;
    pts.push_back({0, 0});
    for (u64 q = 1; q < ctx.p(); ++q)
        if (ctx.legendre(q) == 1) {
            pts.push_back({0, q});
            pts.push_back({q, 0});
        }
    PointSet L(ctx, std::move(pts));
    if (L.size() != ctx.p()) throw std::logic_error("ls_set: cardinality invariant violated");
    return L;
}

DirectionDegreeReport direction_degree_check(const PointSet& S) {
    const PrimeCtx& ctx = S.ctx();
    const u64 p = ctx.p();
    if (S.size() != p) throw std::invalid_argument("direction_degree_check: expected |S| = p");

    DirectionDegreeReport rep;
    rep.direction_count = direction_set(S).size();
    for (u64 slope = 0; slope <= p; ++slope) {
        Polynomial f = projection_polynomial(S, slope);
        i64 d = f.degree();
        if (d < 1 || d > static_cast<i64>(p) - 2) continue;
        if (d > rep.tightest_degree) {
            rep.tightest_degree = d;
            rep.tightest_slope = slope;
        }
        if (rep.direction_count < static_cast<std::size_t>(d) + 2) {
            rep.holds = false;
            rep.violating_slopes.push_back(slope);
        }
    }
    return rep;
}

const char* slope_class_name(SlopeClass c) noexcept {
    switch (c) {
        case SlopeClass::Constant: return "constant";
        case SlopeClass::FamilyI: return "family-i";
        case SlopeClass::FamilyII: return "family-ii";
        default: return "other";
    }
}

CensusReport slope_census(const PointSet& S) {
    const PrimeCtx& ctx = S.ctx();
    const u64 p = ctx.p();
    CensusReport rep;
    rep.p = p;

    std::vector<u64> dirs = direction_set(S);
    std::vector<char> determined(p + 1, 0);
    for (u64 d : dirs) determined[d] = 1;
    rep.direction_count = dirs.size();

    for (u64 slope = 0; slope <= p; ++slope) {
        SlopeCensusEntry e;
        e.slope = slope;
        e.determined = determined[slope];
        Polynomial f = projection_polynomial(S, slope);
        e.degree = f.degree();
        e.lc = f.leading_coeff();
        if (f.is_constant() && f.coeff(0) == 1) {
            e.cls = SlopeClass::Constant;
            ++rep.constants;
        } else if (f.degree() == static_cast<i64>(ctx.half()) && range_profile(f).range_sum == p) {
            switch (family_membership(f)) {
                case Family::I: e.cls = SlopeClass::FamilyI; ++rep.family_i; break;
                case Family::II: e.cls = SlopeClass::FamilyII; ++rep.family_ii; break;
                default: e.cls = SlopeClass::Other; ++rep.other; break;
            }
        } else {
            e.cls = SlopeClass::Other;
            ++rep.other;
        }
        rep.entries.push_back(e);
    }

    rep.expected_constants = ctx.half();
    rep.expected_family_ii = 2;
    rep.expected_family_i = (p + 3) / 2 - 2;
    rep.alt_expected_constants = p >= 5 ? (p - 5) / 2 : 0;
    rep.matches_expected = rep.constants == rep.expected_constants &&
                           rep.family_ii == rep.expected_family_ii &&
                           rep.family_i == rep.expected_family_i && rep.other == 0;
    rep.matches_alt = rep.constants == rep.alt_expected_constants;
    return rep;
}

CensusReport ls_profile_census(const PrimeCtx& ctx) { return slope_census(ls_set(ctx)); }

}  // namespace redeilab
