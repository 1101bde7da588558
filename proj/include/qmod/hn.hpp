#pragma once

#include <map>
#include <vector>

#include "qmod/quiver.hpp"
#include "qmod/series.hpp"

namespace qmod {

/// Harder-Narasimhan type: ordered nonzero dimension vectors with strictly
/// decreasing slopes, summing to the ambient dimension vector. Length 1 is
/// the trivial (semistable) type.
struct HNType {
    std::vector<DimensionVector> pieces;

    bool trivial() const { return pieces.size() == 1; }
    DimensionVector total() const;

    friend bool operator==(const HNType&, const HNType&) = default;
    friend auto operator<=>(const HNType& a, const HNType& b) {
        return a.pieces <=> b.pieces;
    }
};

/// All HN types for (q, d, theta) in deterministic lexicographic order,
/// trivial type included. Requires check_admissible(theta, d).
std::vector<HNType> enumerate_hn_types(const Quiver& q, const DimensionVector& d,
                                       const StabilityParam& theta);

/// Codimension of the Hesselink stratum indexed by the type:
///   sum_{k<l} [ sum_a d^k_{t(a)} d^l_{h(a)} - sum_i d^k_i d^l_i ]
/// i.e. -sum_{k<l} euler_form(d^k, d^l).
long long codim(const Quiver& q, const HNType& t);

/// Product of GL(d^k_i) over pieces and vertices (zero ranks skipped).
GroupSpec levi_of(const Quiver& q, const HNType& t);

/// Gauge group of the ambient dimension vector: prod_i GL(d_i).
GroupSpec gauge_group(const Quiver& q, const DimensionVector& d);

struct StratumRecord {
    HNType hn_type;
    long long codim = 0;
    GroupSpec levi;
};

std::vector<StratumRecord> strata(const Quiver& q, const DimensionVector& d,
                                  const StabilityParam& theta);

/// Stability parameter testing a piece at its own slope:
///   theta'_i = dim(piece) * theta_i - theta(piece),
/// so that theta'(f) <= 0 iff slope(f) <= slope(piece).
StabilityParam shifted_theta(const StabilityParam& theta, const DimensionVector& piece);

/// Divide the weights by the gcd of their absolute values (sign preserved);
/// the all-zero parameter is returned unchanged. Used as memo key.
StabilityParam normalize_theta(StabilityParam theta);

/// Equivariant Poincare series of the semistable locus, computed by the
/// stratification recursion
///   P^ss(d) = P(BG_d) - sum over nontrivial HN types of
///             t^{2 codim} prod_k P^ss(d^k, shifted theta).
/// Memoized on (dimension vector, normalized theta); results do not depend
/// on cache state. Not thread-safe; use one engine per thread.
class PoincareEngine {
public:
    PoincareEngine(const Quiver& q, int trunc_degree);

    TruncatedSeries semistable_series(const DimensionVector& d, const StabilityParam& theta);

    int trunc() const { return trunc_; }

private:
    const Quiver& quiver_;
    int trunc_;
    std::map<std::pair<std::vector<long long>, std::vector<long long>>, TruncatedSeries> memo_;
};

TruncatedSeries equivariant_ss_series(const Quiver& q, const DimensionVector& d,
                                      const StabilityParam& theta, int trunc_degree);

/// P^ss * (1 - t^2): divides out the classifying series of the scalar
/// stabilizer. Valid when stable = semistable; the result is checked to
/// have nonnegative integer coefficients and to vanish at the truncation
/// edge, and a diagnostic is raised otherwise.
TruncatedSeries moduli_series(const Quiver& q, const DimensionVector& d,
                              const StabilityParam& theta, int trunc_degree);

} // namespace qmod
