#include "qmod/hn.hpp"

#include <functional>
#include <numeric>
#include <optional>

namespace qmod {

DimensionVector HNType::total() const {
    if (pieces.empty()) return DimensionVector{};
    DimensionVector t(std::vector<long long>(pieces.front().size(), 0));
    for (const auto& p : pieces) t = t + p;
    return t;
}

namespace {

// Nonzero vectors e with 0 <= e <= bound, lexicographic order.
void for_each_subvector(const DimensionVector& bound,
                        const std::function<void(const DimensionVector&)>& fn) {
    DimensionVector e(std::vector<long long>(bound.size(), 0));
    while (true) {
        // odometer increment, most significant coordinate first
        int i = e.size() - 1;
        while (i >= 0) {
            if (e.entries[i] < bound[i]) {
                ++e.entries[i];
                std::fill(e.entries.begin() + i + 1, e.entries.end(), 0);
                break;
            }
            --i;
        }
        if (i < 0) break;
        fn(e);
    }
}

void extend_types(const Quiver& q, const StabilityParam& theta,
                  const DimensionVector& remaining,
                  std::vector<DimensionVector>& acc,
                  std::vector<HNType>& out) {
    if (remaining.is_zero()) {
        out.push_back(HNType{acc});
        return;
    }
    for_each_subvector(remaining, [&](const DimensionVector& e) {
        if (!acc.empty() && slope_compare(theta, e, acc.back()) >= 0) return;
        acc.push_back(e);
        extend_types(q, theta, remaining - e, acc, out);
        acc.pop_back();
    });
}

} // namespace

std::vector<HNType> enumerate_hn_types(const Quiver& q, const DimensionVector& d,
                                       const StabilityParam& theta) {
    // Admissibility of theta is not needed here: the slope ordering, and
    // with it the set of types, is invariant under adding multiples of the
    // dim functional, which can always arrange theta(d) = 0.
    detail::require_same_size(d.size(), q.vertex_count(), "enumerate_hn_types");
    detail::require_same_size(theta.size(), q.vertex_count(), "enumerate_hn_types");
    std::vector<HNType> out;
    std::vector<DimensionVector> acc;
    extend_types(q, theta, d, acc, out);
    return out;
}

long long codim(const Quiver& q, const HNType& t) {
    if (t.pieces.empty())
        throw StructuralError("codim: empty HN type");
    long long c = 0;
    for (size_t k = 0; k < t.pieces.size(); ++k)
        for (size_t l = k + 1; l < t.pieces.size(); ++l)
            c -= euler_form(q, t.pieces[k], t.pieces[l]);
    return c;
}

GroupSpec levi_of(const Quiver& q, const HNType& t) {
    GroupSpec g;
    for (const auto& p : t.pieces)
        for (int i = 0; i < q.vertex_count(); ++i)
            if (p[i] > 0) g.factors.push_back({GroupFactor::Kind::GL, p[i]});
    return g;
}

GroupSpec gauge_group(const Quiver& q, const DimensionVector& d) {
    return levi_of(q, HNType{{d}});
}

std::vector<StratumRecord> strata(const Quiver& q, const DimensionVector& d,
                                  const StabilityParam& theta) {
    std::vector<StratumRecord> out;
    for (const auto& t : enumerate_hn_types(q, d, theta))
        out.push_back({t, codim(q, t), levi_of(q, t)});
    return out;
}

StabilityParam shifted_theta(const StabilityParam& theta, const DimensionVector& piece) {
    detail::require_same_size(theta.size(), piece.size(), "shifted_theta");
    long long dim = piece.total();
    long long tv = theta_value(theta, piece);
    StabilityParam out;
    out.weights.reserve(theta.size());
    for (int i = 0; i < theta.size(); ++i) out.weights.push_back(dim * theta[i] - tv);
    return out;
}

StabilityParam normalize_theta(StabilityParam theta) {
    long long g = 0;
    for (long long w : theta.weights) g = std::gcd(g, w);
    if (g > 1)
        for (long long& w : theta.weights) w /= g;
    return theta;
}

PoincareEngine::PoincareEngine(const Quiver& q, int trunc_degree)
    : quiver_(q), trunc_(trunc_degree) {
    // validate early; the zero series constructor checks evenness
    TruncatedSeries probe(trunc_degree);
    (void)probe;
}

TruncatedSeries PoincareEngine::semistable_series(const DimensionVector& d,
                                                  const StabilityParam& theta) {
    if (!check_admissible(theta, d))
        throw DomainError("semistable_series: theta(d) != 0");
    StabilityParam norm = normalize_theta(theta);
    auto key = std::make_pair(d.entries, norm.weights);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    TruncatedSeries result = classifying_series(gauge_group(quiver_, d), trunc_);
    for (const auto& t : enumerate_hn_types(quiver_, d, norm)) {
        if (t.trivial()) continue;
        TruncatedSeries prod = TruncatedSeries::one(trunc_);
        for (const auto& piece : t.pieces) {
            if (prod.is_zero()) break;
            prod = prod * semistable_series(piece, shifted_theta(norm, piece));
        }
        long long c = codim(quiver_, t);
        if (c < 0) {
            // Only types with an empty stratum can have negative codimension;
            // their semistable factor vanishes and the term drops out.
            if (!prod.is_zero())
                throw ConsistencyError(
                    "semistable_series: negative codimension on a nonempty stratum");
            continue;
        }
        if (2 * c > trunc_ || prod.is_zero()) continue;
        result -= TruncatedSeries::monomial(static_cast<int>(2 * c), 1, trunc_) * prod;
    }
    memo_.emplace(key, result);
    return result;
}

TruncatedSeries equivariant_ss_series(const Quiver& q, const DimensionVector& d,
                                      const StabilityParam& theta, int trunc_degree) {
    PoincareEngine engine(q, trunc_degree);
    return engine.semistable_series(d, theta);
}

TruncatedSeries moduli_series(const Quiver& q, const DimensionVector& d,
                              const StabilityParam& theta, int trunc_degree) {
    if (!q.connected())
        throw DomainError("moduli_series: quiver is not connected");
    TruncatedSeries ss = equivariant_ss_series(q, d, theta, trunc_degree);
    TruncatedSeries shift = TruncatedSeries::one(trunc_degree) -
                            TruncatedSeries::monomial(2, 1, trunc_degree);
    TruncatedSeries out = ss * shift;
    for (int k = 0; k <= trunc_degree; ++k) {
        const Rational& c = out.coeff(k);
        if (c < 0 || denominator(c) != 1)
            throw DomainError("moduli_series: coefficient at t^" + std::to_string(k) +
                              " is not a nonnegative integer; stable != semistable or "
                              "convention bug");
    }
    if (trunc_degree > 0 && out.coeff(trunc_degree) != 0)
        throw DomainError("moduli_series: series has not stabilized below the truncation "
                          "degree; stable != semistable or convention bug");
    return out;
}

} // namespace qmod
