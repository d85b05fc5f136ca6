#ifndef REDEILAB_CLASSIFY_HPP
#define REDEILAB_CLASSIFY_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "redeilab/poly.hpp"

namespace redeilab {

/// Per-shift character data of a degree-(p-1)/2 polynomial with range sum p:
/// r_gamma = S_gamma(roots) - S_gamma(excess) must land in {c, c-p}, with
/// exactly c shifts hitting c-p.
struct ResidueProfile {
    u64 c = 0;  // lifted leading coefficient
    std::vector<i64> s_roots;
    std::vector<i64> s_excess;
    std::vector<i64> r;
    u64 m_c = 0;
    u64 m_c_minus_p = 0;
    bool r_in_admissible_pair = true;  // every r_gamma in {c, c-p}
    bool tallies_match = true;         // m_{c-p} == c and m_c == p-c
};
ResidueProfile residue_profile(const Polynomial& P);

/// Representative of the orbit of P under x -> a*x + b (a != 0): the image
/// whose coefficient sequence read from the leading coefficient down is
/// lexicographically least. Idempotent and constant on orbits.
Polynomial canonicalize_orbit(const Polynomial& P);

enum class Family { I, II, Other };
const char* family_name(Family f) noexcept;

/// Exact orbit comparison against the two constructed families. Requires
/// degree (p-1)/2 and range sum p.
Family family_membership(const Polynomial& P);

struct SupportDegreeReport {
    u64 support_size = 0;
    i64 degree = 0;
    bool holds = false;  // degree >= support_size - 1
};
SupportDegreeReport support_degree_check(const Polynomial& P);

enum class Strategy { Naive, Rootsets };
const char* strategy_name(Strategy s) noexcept;

struct ClassifyOptions {
    Strategy strategy = Strategy::Rootsets;
    /// Naive only: also scan degrees 1..(p-1)/2-1 and record any survivor.
    bool scan_lower_degrees = false;
    /// Target range sum is multiple * p. Values != 1 are exploratory and
    /// naive-only; the scan then covers degrees 1..(p-1)/2.
    u64 range_sum_multiple = 1;
    /// Rootsets only: restrict the scan to one leading coefficient, which
    /// must lie in the normalized range [1, (p-1)/2].
    std::optional<u64> lc_only;
    u64 candidate_budget = 1'000'000'000;
    unsigned threads = 1;
};

struct OrbitReport {
    std::vector<u64> coeffs;  // canonical representative, a_0 first
    u64 lc = 0;
    std::vector<u64> roots;   // of the canonical representative
    Family family = Family::Other;
    u64 found_count = 0;      // survivors that collapsed onto this orbit
    // Structural checks (meaningful for range sum p at degree (p-1)/2):
    bool distinct_roots_ok = false;   // (p-1)/2 distinct roots
    bool residue_tallies_ok = false;  // residue profile admissible + tallies
    bool lc_class_ok = false;         // normalized |LC| in {1, (p-1)/2}
    bool power_sum_ok = false;        // power-sum identity up to j=(p-1)/2
    bool checks_ran = false;
};

struct ClassificationResult {
    u64 p = 0;
    Strategy strategy = Strategy::Naive;
    u64 range_sum_target = 0;
    std::vector<OrbitReport> orbits;  // sorted by canonical coefficients
    u64 other_count = 0;
    u64 candidates_scanned = 0;
    u64 survivor_count = 0;
    bool scanned_lower_degrees = false;
    u64 lower_degree_survivors = 0;  // non-constant survivors below (p-1)/2
    double enumeration_ms = 0.0;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full scan over coefficient tuples of degree exactly (p-1)/2 (plus lower
/// degrees on request). Exponential in p; the independent oracle for the
/// rootset enumerator.
ClassificationResult enumerate_naive(const PrimeCtx& ctx, const ClassifyOptions& opts = {});

/// Scan over candidates c * prod(x - rho) with 0 in the root set and
/// c in [1, (p-1)/2]; survivors are expanded back to full orbits. Must agree
/// with enumerate_naive wherever both run.
ClassificationResult enumerate_rootsets(const PrimeCtx& ctx, const ClassifyOptions& opts = {});

}  // namespace redeilab

#endif
