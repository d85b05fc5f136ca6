#ifndef REDEILAB_FOURIER_HPP
#define REDEILAB_FOURIER_HPP

#include "redeilab/geometry.hpp"

namespace redeilab {

/// Fourier data of one direction class of characters: the p-1 nontrivial
/// characters along it share one magnitude. p_mag values are p * |1̂_S|.
struct DirectionSpectrum {
    u64 slope = 0;
    SlopeClass cls = SlopeClass::Other;
    i64 degree = -1;
    u64 lc = 0;
    double p_mag = 0.0;       // max over the characters of the direction
    double p_mag_min = 0.0;
    double p_mag_spread = 0.0;
};

/// Transform normalization: 1̂_S(xi) = (1/p) * sum_x 1_S(x) * conj(xi(x)),
/// so the trivial character has value |S|/p and Plancherel reads
/// sum_xi |1̂_S(xi)|^2 = |S|.
struct SpectrumReport {
    u64 p = 0;
    std::vector<DirectionSpectrum> directions;  // p+1 classes, vertical last
    double trivial_p_mag = 0.0;                 // |S|
    double plancherel_residual = 0.0;           // |sum_xi |1̂|^2 - |S||
    u64 m_count = 0;                            // directions in the sqrt(p) class
};

/// Grouped transform: per direction, one pass over the line counts and one
/// O(p) sum per character (O(p^3) total, never the quartic pointwise sum).
SpectrumReport spectrum(const PointSet& S);

enum class MagnitudeLaw { Zero, SqrtP, HalfWindow, Unclassified };
const char* magnitude_law_name(MagnitudeLaw law) noexcept;

/// Per-direction magnitude laws: constant projections transform to zero,
/// leading coefficient ±1 gives p|1̂| = sqrt(p), and ±(p-1)/2 pins p|1̂|
/// inside [p/2 - sqrt(p)/2, p/2 + sqrt(p)/2]. Checked to 1e-6.
struct DirectionVerdict {
    u64 slope = 0;
    SlopeClass cls = SlopeClass::Other;
    MagnitudeLaw law = MagnitudeLaw::Unclassified;
    double p_mag = 0.0;
    double deviation = 0.0;  // distance to the asserted value/window
    bool pass = true;        // vacuously true for Unclassified
};
struct MagnitudeLawReport {
    u64 p = 0;
    std::vector<DirectionVerdict> verdicts;
    bool all_classified_pass = true;
    u64 unclassified = 0;
};
MagnitudeLawReport magnitude_law_check(const PointSet& S);

/// For a set determining exactly (p+3)/2 directions: the number M of sqrt(p)
/// directions must leave a gap (p+3)/2 - M of exactly 2 (asserted for p > 9).
struct DirectionGapReport {
    u64 m_count = 0;
    i64 gap = 0;
    bool asserted = false;  // p > 9
    bool holds = false;     // gap == 2
};
DirectionGapReport direction_gap_count(const PointSet& S);

inline constexpr double kMagnitudeTolerance = 1e-6;

}  // namespace redeilab

#endif
