#include "redeilab/poly.hpp"

#include <algorithm>

namespace redeilab {

namespace {

// coeffs * (a*x + b), in place. No reduction step needed as long as the
// caller keeps the degree below p.
void mul_linear(const PrimeCtx& ctx, std::vector<u64>& c, u64 a, u64 b) {
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        u64 hi = ctx.mul(c[k], a);
        u64 lo = ctx.mul(c[k], b);
        c[k + 1] = ctx.add(c[k + 1], hi);
        c[k] = lo;
    }
}

}  // namespace

Polynomial::Polynomial(const PrimeCtx& ctx, std::vector<u64> coeffs) : ctx_(&ctx), coeffs_(std::move(coeffs)) {
    for (u64& c : coeffs_) c %= ctx.p();
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.size() > ctx.p())
        throw std::invalid_argument("Polynomial: degree exceeds p-1, not a reduced form");
}

u64 Polynomial::evaluate(u64 x) const noexcept {
    x %= p();
    u64 acc = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = ctx_->add(ctx_->mul(acc, x), coeffs_[k]);
    return acc;
}

FieldElement Polynomial::evaluate(FieldElement x) const {
    if (x.ctx().p() != p()) throw std::invalid_argument("Polynomial::evaluate: modulus mismatch");
    return FieldElement(*ctx_, evaluate(x.value()));
}

std::vector<u64> Polynomial::values() const {
    std::vector<u64> v(p());
    for (u64 x = 0; x < p(); ++x) v[x] = evaluate(x);
    return v;
}

Polynomial interpolate(const PrimeCtx& ctx, std::span<const u64> values) {
    const u64 p = ctx.p();
    if (values.size() != p) throw std::invalid_argument("interpolate: expected exactly p values");
    std::vector<u64> a(p, 0);
    a[0] = values[0] % p;
    std::vector<u64> pw(p, 1);  // x^t, with 0^0 = 1
    for (u64 t = 0; t + 1 < p; ++t) {
        u64 m = 0;
        for (u64 x = 0; x < p; ++x) m = ctx.add(m, ctx.mul(pw[x], values[x] % p));
        a[p - 1 - t] = ctx.neg(m);
        if (t + 2 < p)
            for (u64 x = 0; x < p; ++x) pw[x] = ctx.mul(pw[x], x);
    }
    return Polynomial(ctx, std::move(a));
}

MinDegreeWitness min_degree_witness(const PrimeCtx& ctx, std::span<const u64> values) {
    const u64 p = ctx.p();
    if (values.size() != p) throw std::invalid_argument("min_degree_witness: expected exactly p values");
    std::vector<u64> pw(p, 1);
    for (u64 t = 0; t + 1 < p; ++t) {
        u64 m = 0;
        for (u64 x = 0; x < p; ++x) m = ctx.add(m, ctx.mul(pw[x], values[x] % p));
        if (m != 0) return {static_cast<i64>(p - 1 - t), t};
        for (u64 x = 0; x < p; ++x) pw[x] = ctx.mul(pw[x], x);
    }
    // All moments vanish: the function is the constant values[0].
    return {values[0] % p != 0 ? 0 : -1, std::nullopt};
}

RangeProfile range_profile(const Polynomial& P) {
    RangeProfile rp;
    rp.values = P.values();
    for (u64 x = 0; x < P.p(); ++x) {
        u64 v = rp.values[x];
        rp.range_sum += v;
        if (v == 0) rp.roots.push_back(x);
        for (u64 i = 1; i < v; ++i) rp.excess.push_back(x);
    }
    return rp;
}

Polynomial affine_substitute(const Polynomial& P, u64 a, u64 b) {
    const PrimeCtx& ctx = P.ctx();
    a %= ctx.p();
    b %= ctx.p();
    if (a == 0) throw std::invalid_argument("affine_substitute: a must be nonzero");
    if (P.is_zero()) return P;
    const auto& c = P.coeffs();
    std::vector<u64> res{c.back()};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        mul_linear(ctx, res, a, b);
        res[0] = ctx.add(res[0], c[k]);
    }
    return Polynomial(ctx, std::move(res));
}

PowerSumReport power_sum_identity_check(const Polynomial& P, u64 j) {
    const PrimeCtx& ctx = P.ctx();
    const u64 p = ctx.p();
    if (P.is_zero()) throw std::invalid_argument("power_sum_identity_check: zero polynomial");
    if (j > p - 2) throw std::invalid_argument("power_sum_identity_check: j must be <= p-2");
    RangeProfile rp = range_profile(P);

    PowerSumReport rep;
    std::vector<u64> pw_x(p, 1);
    std::vector<u64> pw_a(rp.roots.size(), 1);
    std::vector<u64> pw_b(rp.excess.size(), 1);
    for (u64 k = 0; k <= j; ++k) {
        u64 s_xp = 0, s_x = 0, s_a = 0, s_b = 0;
        for (u64 x = 0; x < p; ++x) {
            s_xp = ctx.add(s_xp, ctx.mul(pw_x[x], rp.values[x]));
            s_x = ctx.add(s_x, pw_x[x]);
        }
        for (std::size_t l = 0; l < rp.roots.size(); ++l) s_a = ctx.add(s_a, pw_a[l]);
        for (std::size_t l = 0; l < rp.excess.size(); ++l) s_b = ctx.add(s_b, pw_b[l]);
        // s_xp - (s_x - s_a + s_b) mod p
        u64 res = ctx.sub(s_xp, ctx.add(ctx.sub(s_x, s_a), s_b));
        rep.residuals.push_back(res);
        if (res != 0) rep.holds = false;
        if (k == j) break;
        for (u64 x = 0; x < p; ++x) pw_x[x] = ctx.mul(pw_x[x], x);
        for (std::size_t l = 0; l < rp.roots.size(); ++l) pw_a[l] = ctx.mul(pw_a[l], rp.roots[l]);
        for (std::size_t l = 0; l < rp.excess.size(); ++l) pw_b[l] = ctx.mul(pw_b[l], rp.excess[l]);
    }
    return rep;
}

Polynomial from_roots(const PrimeCtx& ctx, u64 lc, std::span<const u64> roots) {
    if (roots.size() >= ctx.p()) throw std::invalid_argument("from_roots: too many roots for a reduced form");
    std::vector<u64> c{lc % ctx.p()};
    for (u64 r : roots) mul_linear(ctx, c, 1, ctx.neg(r % ctx.p()));
    return Polynomial(ctx, std::move(c));
}

Polynomial make_family(const PrimeCtx& ctx, FamilyVariant variant, FamilySign sign, u64 shift) {
    const u64 p = ctx.p();
    shift %= p;
    std::vector<u64> c{1};
    for (u64 i = 0; i < ctx.half(); ++i) mul_linear(ctx, c, 1, ctx.neg(shift));
    if (sign == FamilySign::Minus)
        for (u64& x : c) x = ctx.neg(x);
    c[0] = ctx.add(c[0], 1);
    if (variant == FamilyVariant::II) {
        u64 s = (p + 1) / 2;
        for (u64& x : c) x = ctx.mul(x, s);
    }
    Polynomial P(ctx, std::move(c));
    if (P.degree() != static_cast<i64>(ctx.half()) || range_profile(P).range_sum != p)
        throw std::logic_error("make_family: construction invariant violated");
    return P;
}

}  // namespace redeilab
