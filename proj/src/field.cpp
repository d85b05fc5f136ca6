#include "redeilab/field.hpp"

#include <cmath>
#include <numbers>

namespace redeilab {

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

PrimeCtx::PrimeCtx(u64 p) : p_(p) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("PrimeCtx: p must be an odd prime");
    if (p >= (u64(1) << 62)) throw std::invalid_argument("PrimeCtx: p too large");
    if (!is_prime(p)) throw std::invalid_argument("PrimeCtx: p is not prime");
    if (p <= kCharTableLimit) {
        char_table_.assign(p, -1);
        char_table_[0] = 0;
        // (x+1)^2 = x^2 + 2x + 1, walked incrementally over x = 1..(p-1)/2.
        u64 sq = 0;
        for (u64 x = 1; x <= half(); ++x) {
            sq += 2 * x - 1;
            if (sq >= p) sq -= p;
            if (sq >= p) sq -= p;
            char_table_[sq] = 1;
        }
    }
}

u64 PrimeCtx::pow(u64 a, u64 e) const noexcept { return pow_mod(a, e, p_); }

u64 PrimeCtx::inv(u64 a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeCtx::inv: inverse of zero");
    return pow_mod(a % p_, p_ - 2, p_);
}

int PrimeCtx::legendre_slow(u64 a) const noexcept {
    a %= p_;
    if (a == 0) return 0;
    u64 e = pow_mod(a, half(), p_);  // Euler's criterion
    return e == 1 ? 1 : -1;
}

int legendre(const FieldElement& a) noexcept { return a.ctx().legendre(a.value()); }

int omega(const FieldElement& a) noexcept { return legendre(a); }

double gauss_sum_magnitude(const PrimeCtx& ctx) {
    const u64 p = ctx.p();
    double re = 0.0, im = 0.0;
    for (u64 x = 0; x < p; ++x) {
        u64 k = ctx.mul(x, x);
        double t = 2.0 * std::numbers::pi * double(k) / double(p);
        re += std::cos(t);
        im += std::sin(t);
    }
    return std::hypot(re, im);
}

}  // namespace redeilab
