#pragma once

#include <functional>
#include <map>

#include "qmod/ff.hpp"
#include "qmod/hn.hpp"
#include "qmod/quiver.hpp"

namespace qmod {

/// Representation over F_q: one d_{h(a)} x d_{t(a)} matrix per arrow.
struct FFRep {
    int q = 2;
    DimensionVector dim;
    std::vector<FFMatrix> mats; // aligned with quiver.arrows

    friend bool operator==(const FFRep&, const FFRep&) = default;
    friend auto operator<=>(const FFRep& a, const FFRep& b) {
        return std::tie(a.q, a.dim.entries, a.mats) <=> std::tie(b.q, b.dim.entries, b.mats);
    }
};

/// phi-stable tuple of subspaces, one per vertex (RREF bases).
struct SubrepWitness {
    std::vector<Subspace> bases;
    DimensionVector dim;
};

/// dim Rep(Q, d) = sum_a d_{t(a)} d_{h(a)}.
long long rep_space_dim(const Quiver& q, const DimensionVector& d);

/// Number of representations q^{dim Rep} as a double (refusal decisions only).
double rep_count(const Quiver& q, const DimensionVector& d, int fq);

/// Visit every representation exactly once, in a deterministic odometer
/// order over matrix entries. Refuses when q^{dim Rep} exceeds the budget.
void for_each_rep(const Quiver& q, const DimensionVector& d, int fq, double budget,
                  const std::function<void(const FFRep&)>& fn);

FFRep zero_rep(const Quiver& q, const DimensionVector& d, int fq);

/// Visit every phi-stable subspace tuple (the zero tuple and the full tuple
/// included), in the canonical subspace order per vertex.
void for_each_subrep(const Quiver& q, const FFRep& r,
                     const std::function<void(const std::vector<const Subspace*>&)>& fn);

/// All dimension vectors of phi-stable subspace tuples, each with the first
/// witness in canonical order. Sorted by dimension vector.
std::vector<std::pair<DimensionVector, SubrepWitness>> subrep_dims(const Quiver& q,
                                                                   const FFRep& r);

/// Witness check: subspaces phi-stable and shapes consistent.
bool check_subrep_witness(const Quiver& q, const FFRep& r, const SubrepWitness& w);

struct HNWitness {
    HNType type;
    std::vector<SubrepWitness> steps; // maximal destabilizing subrep at each stage
};

/// Harder-Narasimhan type by iterated maximal destabilizing subrepresentations
/// (maximal slope, then maximal total dimension). The maximizer is required
/// to be unique as a subspace tuple; a tie raises ConsistencyError.
HNWitness hn_type_ff(const Quiver& q, const FFRep& r, const StabilityParam& theta);

enum class TieBreak { First, Last };

/// Jordan-Hoelder graded pieces of a semistable representation: iterated
/// minimal-dimension equal-slope subrepresentations. Ties among minimal
/// subreps are broken by canonical order (First) or its reverse (Last);
/// the multiset of graded dimension vectors is independent of the choice.
std::vector<std::pair<DimensionVector, FFRep>> jh_graded_ff(const Quiver& q, const FFRep& r,
                                                            const StabilityParam& theta,
                                                            TieBreak tie = TieBreak::First);

struct CensusReport {
    int field = 2;
    DimensionVector dim;
    StabilityParam theta;
    std::map<HNType, long long> empirical;
    std::map<HNType, long long> predicted;
    long long total = 0;
    bool match = false;
};

/// Brute-force census of the Hesselink strata at (q, d, theta) over F_q,
/// against the fibration model
///   |S_type| = prod_i [d_i; d^1_i,...,d^s_i]_q * q^{dim(Rep cap u_P)}
///              * prod_k |Rep^ss(d^k)|
/// with |Rep^ss| computed recursively from the same model.
CensusReport strata_census(const Quiver& q, const DimensionVector& d,
                           const StabilityParam& theta, int fq, double budget = 1e6);

/// Gaussian binomial [n k]_q.
long long gaussian_binomial(int n, int k, int q);

} // namespace qmod
