#ifndef REDEILAB_FIELD_HPP
#define REDEILAB_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace redeilab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Deterministic Miller-Rabin (fixed witness set, exact for n < 3.3e24).
bool is_prime(u64 n);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Shared modulus context: a validated odd prime, plus a quadratic-character
/// table for small p so the Legendre-heavy loops are O(1) per symbol.
/// Immutable after construction; safe to share read-only across threads.
class PrimeCtx {
public:
    explicit PrimeCtx(u64 p);

    // FieldElement and Polynomial keep pointers into the ctx.
    PrimeCtx(const PrimeCtx&) = delete;
    PrimeCtx& operator=(const PrimeCtx&) = delete;

    u64 p() const noexcept { return p_; }
    /// (p-1)/2, the pivotal degree everywhere in this library.
    u64 half() const noexcept { return (p_ - 1) / 2; }

    u64 reduce(u64 v) const noexcept { return v % p_; }
    u64 add(u64 a, u64 b) const noexcept { u64 s = a + b; return s >= p_ ? s - p_ : s; }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept { return static_cast<u64>(u128(a) * b % p_); }
    u64 pow(u64 a, u64 e) const noexcept;
    /// Multiplicative inverse; throws std::domain_error at zero.
    u64 inv(u64 a) const;

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    int legendre(u64 a) const noexcept {
        if (!char_table_.empty()) return char_table_[a];
        return legendre_slow(a);
    }

    static constexpr u64 kCharTableLimit = u64(1) << 20;

private:
    int legendre_slow(u64 a) const noexcept;

    u64 p_;
    std::vector<std::int8_t> char_table_;  // empty when p > kCharTableLimit
};

/// A residue in [0, p). Mixing elements of different moduli throws.
class FieldElement {
public:
    FieldElement(const PrimeCtx& ctx, u64 value) : ctx_(&ctx), v_(ctx.reduce(value)) {}

    u64 value() const noexcept { return v_; }
    const PrimeCtx& ctx() const noexcept { return *ctx_; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        check_ctx(a, b);
        return FieldElement(*a.ctx_, a.ctx_->add(a.v_, b.v_), 0);
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        check_ctx(a, b);
        return FieldElement(*a.ctx_, a.ctx_->sub(a.v_, b.v_), 0);
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        check_ctx(a, b);
        return FieldElement(*a.ctx_, a.ctx_->mul(a.v_, b.v_), 0);
    }
    FieldElement operator-() const { return FieldElement(*ctx_, ctx_->neg(v_), 0); }
    FieldElement inverse() const { return FieldElement(*ctx_, ctx_->inv(v_), 0); }
    FieldElement pow(u64 e) const { return FieldElement(*ctx_, ctx_->pow(v_, e), 0); }

    friend bool operator==(FieldElement a, FieldElement b) noexcept {
        return a.ctx_->p() == b.ctx_->p() && a.v_ == b.v_;
    }
    friend bool operator!=(FieldElement a, FieldElement b) noexcept { return !(a == b); }

private:
    // Internal: value already reduced.
    FieldElement(const PrimeCtx& ctx, u64 value, int) : ctx_(&ctx), v_(value) {}
    static void check_ctx(const FieldElement& a, const FieldElement& b) {
        if (a.ctx_->p() != b.ctx_->p())
            throw std::invalid_argument("FieldElement: modulus mismatch");
    }

    const PrimeCtx* ctx_;
    u64 v_;
};

int legendre(const FieldElement& a) noexcept;
/// Quadratic character written as a total function (0 at 0); same values as
/// legendre over a prime field.
int omega(const FieldElement& a) noexcept;

/// |sum_x exp(2*pi*i*x^2/p)| in double precision; equals sqrt(p).
double gauss_sum_magnitude(const PrimeCtx& ctx);

}  // namespace redeilab

#endif
