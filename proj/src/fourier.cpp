#include "redeilab/fourier.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace redeilab {

SpectrumReport spectrum(const PointSet& S) {
    const PrimeCtx& ctx = S.ctx();
    const u64 p = ctx.p();
    if (S.size() != p) throw std::invalid_argument("spectrum: expected |S| = p");

    CensusReport census = slope_census(S);

    std::vector<std::complex<double>> twiddle(p);
    for (u64 k = 0; k < p; ++k) {
        double t = -2.0 * std::numbers::pi * double(k) / double(p);
        twiddle[k] = {std::cos(t), std::sin(t)};
    }

    SpectrumReport rep;
    rep.p = p;
    rep.trivial_p_mag = double(S.size());
    double sq_sum = double(S.size()) * double(S.size());  // trivial character

    for (u64 slope = 0; slope <= p; ++slope) {
        std::vector<u64> counts = line_counts(S, slope);
        DirectionSpectrum d;
        d.slope = slope;
        d.cls = census.entries[slope].cls;
        d.degree = census.entries[slope].degree;
        d.lc = census.entries[slope].lc;
        double lo = 0.0, hi = 0.0;
        for (u64 t = 1; t < p; ++t) {
            std::complex<double> z = 0.0;
            u64 idx = 0;
            for (u64 j = 0; j < p; ++j) {
                if (counts[j]) z += double(counts[j]) * twiddle[idx];
                idx += t;
                if (idx >= p) idx -= p;
            }
            double mag = std::abs(z);
            sq_sum += mag * mag;
            if (t == 1) {
                lo = hi = mag;
            } else {
                lo = std::min(lo, mag);
                hi = std::max(hi, mag);
            }
        }
        d.p_mag = hi;
        d.p_mag_min = lo;
        d.p_mag_spread = hi - lo;
        if (d.cls == SlopeClass::FamilyI) ++rep.m_count;
        rep.directions.push_back(d);
    }

    rep.plancherel_residual = std::abs(sq_sum / double(p * p) - double(S.size()));
    return rep;
}

const char* magnitude_law_name(MagnitudeLaw law) noexcept {
    switch (law) {
        case MagnitudeLaw::Zero: return "zero";
        case MagnitudeLaw::SqrtP: return "gauss";
        case MagnitudeLaw::HalfWindow: return "heavy";
        default: return "unclassified";
    }
}

MagnitudeLawReport magnitude_law_check(const PointSet& S) {
    const u64 p = S.p();
    SpectrumReport spec = spectrum(S);

    MagnitudeLawReport rep;
    rep.p = p;
    const double root_p = std::sqrt(double(p));
    for (const DirectionSpectrum& d : spec.directions) {
        DirectionVerdict v;
        v.slope = d.slope;
        v.cls = d.cls;
        v.p_mag = d.p_mag;
        switch (d.cls) {
            case SlopeClass::Constant:
                v.law = MagnitudeLaw::Zero;
                v.deviation = d.p_mag;
                v.pass = d.p_mag <= kMagnitudeTolerance;
                break;
            case SlopeClass::FamilyI:
                v.law = MagnitudeLaw::SqrtP;
                v.deviation = std::max(std::abs(d.p_mag - root_p), std::abs(d.p_mag_min - root_p));
                v.pass = v.deviation <= kMagnitudeTolerance;
                break;
            case SlopeClass::FamilyII: {
                v.law = MagnitudeLaw::HalfWindow;
                double lo = double(p) / 2 - root_p / 2, hi = double(p) / 2 + root_p / 2;
                double worst = 0.0;
                for (double mag : {d.p_mag, d.p_mag_min}) {
                    if (mag < lo) worst = std::max(worst, lo - mag);
                    if (mag > hi) worst = std::max(worst, mag - hi);
                }
                v.deviation = worst;
                v.pass = worst <= kMagnitudeTolerance;
                break;
            }
            default:
                v.law = MagnitudeLaw::Unclassified;
                ++rep.unclassified;
                break;
        }
        if (v.law != MagnitudeLaw::Unclassified && !v.pass) rep.all_classified_pass = false;
        rep.verdicts.push_back(v);
    }
    return rep;
}

DirectionGapReport direction_gap_count(const PointSet& S) {
    const u64 p = S.p();
    std::size_t dirs = direction_set(S).size();
    if (dirs != (p + 3) / 2)
        throw std::invalid_argument("direction_gap_count: set does not determine (p+3)/2 directions");
    SpectrumReport spec = spectrum(S);
    DirectionGapReport rep;
    rep.m_count = spec.m_count;
    rep.gap = static_cast<i64>((p + 3) / 2) - static_cast<i64>(spec.m_count);
    rep.asserted = p > 9;
    rep.holds = rep.gap == 2;
    return rep;
}

}  // namespace redeilab
