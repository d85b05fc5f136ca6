#ifndef REDEILAB_CHARSUM_HPP
#define REDEILAB_CHARSUM_HPP

#include <span>
#include <vector>

#include "redeilab/field.hpp"

namespace redeilab {

/// T_gamma = sum over the subset of the quadratic character of (c - gamma),
/// for every shift gamma.
struct ShiftProfile {
    std::vector<i64> t;  // indexed by gamma = 0..p-1
    i64 max_abs = 0;
    u64 argmax = 0;  // least gamma attaining max_abs
};
ShiftProfile shift_profile(const PrimeCtx& ctx, std::span<const u64> subset, unsigned threads = 1);

/// Joint square-status counts |{a : chi(a)=e1, chi(a+gamma)=e2}| for a fixed
/// nonzero gamma. The four cells sum to p-2.
struct PaleyTable {
    u64 p = 0;
    int gamma_class = 1;  // +1 for gamma a square, -1 otherwise
    u64 gamma = 0;        // representative used
    // counts[i][j]: i selects e1 (+1 then -1), j selects e2
    u64 counts[2][2] = {{0, 0}, {0, 0}};

    friend bool operator==(const PaleyTable& a, const PaleyTable& b) noexcept {
        return a.p == b.p && a.gamma_class == b.gamma_class &&
               a.counts[0][0] == b.counts[0][0] && a.counts[0][1] == b.counts[0][1] &&
               a.counts[1][0] == b.counts[1][0] && a.counts[1][1] == b.counts[1][1];
    }
};

/// Brute-force counts over all a in F_p. For p <= 101 every representative of
/// the class is checked and must give identical counts.
PaleyTable paley_table(const PrimeCtx& ctx, int gamma_class);

/// Closed forms: counts = (p - 2 - e1*chi(-gamma) - e2*chi(gamma) - e1*e2)/4.
PaleyTable paley_closed_form(u64 p, int gamma_class);

/// At most one shift gamma may reach |T_gamma| >= (p-1)/4; when the maximum
/// strictly exceeds (p-1)/4, say by t, every other shift is capped at
/// (p-1)/4 - t + 1. All comparisons in exact integer arithmetic.
struct UniqueLargeShiftReport {
    bool unique_large = true;         // at most one gamma with |T| >= (p-1)/4
    bool cap_holds = true;            // the second-clause cap, when triggered
    bool cap_triggered = false;       // max strictly above (p-1)/4
    bool boundary = false;            // some |T_gamma| == (p-1)/4 exactly
    std::vector<u64> large_gammas;    // all gamma with |T| >= (p-1)/4
    i64 max_abs = 0;
    u64 argmax = 0;
    bool holds() const noexcept { return unique_large && cap_holds; }
};
UniqueLargeShiftReport unique_large_shift_check(const PrimeCtx& ctx, std::span<const u64> subset);

/// N(v) = #{y : omega(y + r_i) = v_i for all i}, for every sign vector v.
/// Asserts |N(v) - p/2^m| < m*(sqrt(p)+1)/2 exactly (squared integer compare).
struct SignPatternReport {
    u64 m = 0;
    std::vector<u64> counts;       // indexed by bitmask; bit i set means v_i = +1
    std::vector<bool> bound_ok;    // per sign vector
    bool all_bounds_hold = true;
    double bound_value = 0.0;      // m*(sqrt(p)+1)/2, for display
};
SignPatternReport weil_sign_patterns(const PrimeCtx& ctx, std::span<const u64> shifts);

/// Sizes of all 2^t cells of the Venn diagram of the translates Q + r_i of
/// the nonzero squares. Each cell must stay below p/2^t + t*(sqrt(p)+1)/2.
struct CellSizeReport {
    u64 t = 0;
    std::vector<u64> sizes;        // indexed by membership bitmask
    std::vector<bool> bound_ok;
    bool all_bounds_hold = true;
    double bound_value = 0.0;
};
CellSizeReport translate_cell_sizes(const PrimeCtx& ctx, std::span<const u64> shifts);

/// min_i |A_i ∩ B| <= ( sum_{r >= r_hat} U_r + (r_hat - 1)|B| ) / t, where
/// U_r counts ground elements lying in at least r of the A_i. Requires the
/// proviso U_{r_hat} <= |B|.
struct MinIntersectionReport {
    u64 t = 0;
    u64 r_hat = 0;
    u64 lhs = 0;              // min_i |A_i ∩ B|
    std::size_t argmin = 0;
    u64 rhs_numerator = 0;    // rhs = rhs_numerator / t
    double rhs = 0.0;
    bool holds = false;       // t*lhs <= rhs_numerator
    u64 proviso_lhs = 0;      // U_{r_hat}
    u64 b_size = 0;
    std::vector<u64> union_sizes;  // U_r for r = r_hat..t
};
MinIntersectionReport min_intersection_bound(const std::vector<std::vector<u64>>& sets,
                                             const std::vector<u64>& b, u64 r_hat);

/// Exact check of 93*(p/2^8 + 8*(sqrt(p)+1)/2) < (p-1)/2 (the sufficient
/// condition for the t=8, r_hat=5 proviso with B the squares).
bool qr_translate_proviso_bound_holds(u64 p);

/// Count of shifts with |T_gamma| >= (num/den)*p, with witnesses. Compared
/// exactly: den*|T| >= num*p.
struct ConcentrationReport {
    u64 count = 0;
    std::vector<u64> witnesses;
    u64 threshold_num = 1;
    u64 threshold_den = 7;
    bool asserted = false;  // the <= 16 claim is out of reach at desk scale
};
ConcentrationReport concentration_scan(const PrimeCtx& ctx, std::span<const u64> subset,
                                       u64 threshold_num = 1, u64 threshold_den = 7,
                                       unsigned threads = 1);

}  // namespace redeilab

#endif
