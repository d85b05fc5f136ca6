#ifndef REDEILAB_POLY_HPP
#define REDEILAB_POLY_HPP

#include <optional>
#include <span>
#include <vector>

#include "redeilab/field.hpp"

namespace redeilab {

/// A function F_p -> F_p in reduced form: coefficients a_0..a_d with
/// d <= p-1 and a_d != 0, except the zero polynomial which has an empty
/// coefficient vector and degree() == -1.
class Polynomial {
public:
    Polynomial(const PrimeCtx& ctx, std::vector<u64> coeffs);

    static Polynomial zero(const PrimeCtx& ctx) { return Polynomial(ctx, {}); }
    static Polynomial constant(const PrimeCtx& ctx, u64 c) { return Polynomial(ctx, {c}); }

    const PrimeCtx& ctx() const noexcept { return *ctx_; }
    u64 p() const noexcept { return ctx_->p(); }
    const std::vector<u64>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    i64 degree() const noexcept { return static_cast<i64>(coeffs_.size()) - 1; }
    u64 coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0; }
    u64 leading_coeff() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

    u64 evaluate(u64 x) const noexcept;
    FieldElement evaluate(FieldElement x) const;
    /// Value table at x = 0..p-1.
    std::vector<u64> values() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
        return a.p() == b.p() && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) noexcept { return !(a == b); }

private:
    const PrimeCtx* ctx_;
    std::vector<u64> coeffs_;  // a_0 first
};

/// The unique reduced polynomial through the given value table (one value per
/// x, in order 0..p-1). Coefficients come from the moment sums
///   a_{p-1-t} = -sum_x x^t f(x)   for t = 0..p-2,   and a_0 = f(0).
Polynomial interpolate(const PrimeCtx& ctx, std::span<const u64> values);

struct MinDegreeWitness {
    i64 degree = -1;             // -1 for the zero function
    std::optional<u64> witness;  // least t with sum_x x^t f(x) != 0; empty for constants
};
MinDegreeWitness min_degree_witness(const PrimeCtx& ctx, std::span<const u64> values);

/// Values lifted to integers in [0, p-1], their plain integer sum, the root
/// set, and the excess multiset: each x with P(x) >= 1 contributes P(x)-1
/// copies of x.
struct RangeProfile {
    std::vector<u64> values;
    u64 range_sum = 0;
    std::vector<u64> roots;   // sorted, distinct
    std::vector<u64> excess;  // sorted multiset
};
RangeProfile range_profile(const Polynomial& P);

/// x -> a*x + b with a != 0. Degree is preserved; LC is scaled by a^deg.
Polynomial affine_substitute(const Polynomial& P, u64 a, u64 b);

/// Per-k residuals (mod p) of
///   sum_x x^k P(x)  =  sum_x x^k - sum_l a_l^k + sum_l b_l^k
/// over the roots a_l and the excess multiset b_l, for k = 0..j.
struct PowerSumReport {
    bool holds = true;
    std::vector<u64> residuals;
};
PowerSumReport power_sum_identity_check(const Polynomial& P, u64 j);

enum class FamilyVariant { I, II };
enum class FamilySign { Plus, Minus };

/// sign*(x - shift)^{(p-1)/2} + 1, scaled by (p+1)/2 for variant II.
/// Guaranteed degree (p-1)/2 and range sum exactly p; checked at construction.
Polynomial make_family(const PrimeCtx& ctx, FamilyVariant variant, FamilySign sign, u64 shift);

/// lc * prod_{r in roots} (x - r); roots may repeat.
Polynomial from_roots(const PrimeCtx& ctx, u64 lc, std::span<const u64> roots);

}  // namespace redeilab

#endif
