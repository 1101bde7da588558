#pragma once

#include <functional>
#include <optional>

#include "qmod/ff.hpp"
#include "qmod/quiver.hpp"
#include "qmod/replab.hpp"
#include "qmod/series.hpp"

namespace qmod {

/// Involution and sign data making a quiver supermixed. All maps are by
/// index into the quiver's vertex/arrow order.
struct SymmetricStructure {
    std::vector<int> vertex_involution;
    std::vector<int> arrow_involution;
    std::vector<int> vertex_signs; // +1 / -1
    std::vector<int> arrow_signs;  // +1 / -1
};

/// Check the supermixed axioms; returns the list of violations (empty = ok):
/// involutions self-inverse, sigma t(a) = h sigma(a) and dually, sign
/// products +1 on every orbit, and arrows with t(a) = sigma h(a) fixed.
std::vector<std::string> validate_supermixed(const Quiver& q, const SymmetricStructure& s);

/// Partition of the sigma-orbits: O = fixed vertices of sign +1, S = fixed
/// vertices of sign -1, G = the first-listed representative of each
/// two-element orbit.
struct VertexClassification {
    std::vector<int> O, S, G;
    static VertexClassification make(const Quiver& q, const SymmetricStructure& s);
};

/// s(d) = sum_{i in G} theta_i d_i / sum_{i in G} d_i. Requires theta to
/// vanish on O and S and the G-supported dimension to be positive.
Rational isotropic_slope(const StabilityParam& theta, const VertexClassification& cls,
                         const DimensionVector& d);

/// Isotropic HN data: isotropic pieces of strictly decreasing slope plus a
/// self-dual residue; pieces, their duals and the residue sum to the ambient
/// dimension vector.
struct IsotropicHNType {
    std::vector<DimensionVector> pieces;
    DimensionVector residue;
};

/// Entrywise sigma-dual of a dimension vector (entry at v moved to sigma(v)).
DimensionVector sigma_dual(const SymmetricStructure& s, const DimensionVector& d);

/// Check the isotropic HN invariants against an ambient dimension vector:
/// piece slopes strictly decreasing and above the ambient slope, the residue
/// self-dual, and sum_k (d^k + sigma-dual d^k) + residue = ambient.
std::vector<std::string> validate_isotropic_hn_type(const Quiver& q,
                                                    const SymmetricStructure& s,
                                                    const StabilityParam& theta,
                                                    const DimensionVector& ambient,
                                                    const IsotropicHNType& t);

/// One critical stratum of the rank-(1,1,n) orthogonal example family.
/// family is 1 or 2 (the two shapes occurring for theta1 < theta2; only
/// family 2 occurs for theta1 > theta2).
struct ExampleStratum {
    int family = 1;
    long long n1 = 0;
    long long n2 = 0;
    long long codim = 0;
    GroupSpec levi; // GL(n1) x O(n2); a rank-1 torus factor is implicit
};

/// d(n1, n2) = (n^2+n+2)/2 - n1^2 - n1 - n2(n2-1)/2 - 1 with n2 = n - 2 n1.
long long example_codim(long long n, long long n1);

/// Strata of the example family: for theta1 < theta2 two families per
/// 1 <= n1, 2 n1 <= n; for theta1 > theta2 one family. theta1 == theta2 is
/// the trivial character and is refused.
std::vector<ExampleStratum> example_strata(long long n, long long theta1, long long theta2);

/// Supplies P^{L(n1)}(Z(n1)) for a stratum base case, or nullopt when the
/// case is not resolved.
using BaseCaseProvider = std::function<std::optional<TruncatedSeries>(long long n1)>;

/// Equivariant series of the semistable locus for the example family:
/// P(B(GL(1) x O(n))) minus sum over strata of t^{2 d(n1,n2)} base(n1).
TruncatedSeries example_series(long long n, long long theta1, long long theta2,
                               int trunc_degree, const BaseCaseProvider& base);

/// Flag of subspaces, one step per entry, each step a tuple of per-vertex
/// subspaces; steps must be increasing.
struct IsotropicFlag {
    std::vector<std::vector<Subspace>> steps;
};

/// Check of C(phi v, w) + C(v, phi_{sigma} w) = 0 against the fixed split
/// form (odd q only).
bool supermixed_compatible(const Quiver& q, const SymmetricStructure& s, const FFRep& r);

/// True iff every step is phi-stable and isotropic for the fixed split form
/// (fixed vertices pair within themselves, two-element orbits pair with the
/// dual vertex), the steps are nested, and the perpendicular flag is
/// phi-stable as well.
bool check_isotropic_flag(const Quiver& q, const SymmetricStructure& s, const FFRep& r,
                          const IsotropicFlag& flag);

} // namespace qmod
