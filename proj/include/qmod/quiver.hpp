#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmod/errors.hpp"

namespace qmod {

/// Exact rational scalar used throughout the series and slope arithmetic.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Finite directed multigraph. Vertex order is the file order and is fixed
/// for the lifetime of the object; everything downstream indexes into it.
struct Quiver {
    struct Arrow {
        std::string name;
        int tail = 0;
        int head = 0;
    };

    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    /// Validating constructor helper; arrows given as {name, tail, head}.
    static Quiver make(std::vector<std::string> vertex_ids,
                       const std::vector<std::array<std::string, 3>>& arrow_specs);

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int arrow_count() const { return static_cast<int>(arrows.size()); }

    /// Index of a vertex id, or -1.
    int vertex_index(std::string_view id) const;
    /// Index of an arrow name, or -1.
    int arrow_index(std::string_view name) const;

    /// Connectivity of the underlying undirected graph.
    bool connected() const;
};

/// Per-vertex nonnegative dimensions, indexed by the quiver's vertex order.
struct DimensionVector {
    std::vector<long long> entries;

    DimensionVector() = default;
    explicit DimensionVector(std::vector<long long> e) : entries(std::move(e)) {}

    long long total() const;
    bool is_zero() const;
    int size() const { return static_cast<int>(entries.size()); }
    long long operator[](int i) const { return entries[i]; }

    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
    friend auto operator<=>(const DimensionVector& a, const DimensionVector& b) {
        return a.entries <=> b.entries;
    }
};

DimensionVector operator+(const DimensionVector& a, const DimensionVector& b);
DimensionVector operator-(const DimensionVector& a, const DimensionVector& b);

/// Integer weights defining the character chi(g) = prod det(g_i)^{theta_i}.
struct StabilityParam {
    std::vector<long long> weights;

    StabilityParam() = default;
    explicit StabilityParam(std::vector<long long> w) : weights(std::move(w)) {}

    int size() const { return static_cast<int>(weights.size()); }
    long long operator[](int i) const { return weights[i]; }

    friend bool operator==(const StabilityParam&, const StabilityParam&) = default;
};

/// Graded pieces of a one-parameter-subgroup filtration of a total space.
/// Step j of the filtration is the partial sum of the first j pieces.
struct FiltrationWeights {
    std::vector<DimensionVector> pieces;
};

/// theta(d) = sum_i theta_i d_i.
long long theta_value(const StabilityParam& theta, const DimensionVector& d);

/// theta(d) / (sum_i d_i) as an exact rational. Requires d nonzero.
Rational slope(const StabilityParam& theta, const DimensionVector& d);

/// sum_i d_i e_i - sum_{a in A} d_{t(a)} e_{h(a)}.
long long euler_form(const Quiver& q, const DimensionVector& d, const DimensionVector& e);

/// Hilbert-Mumford pairing of the character against the filtration:
/// sum_j theta(M_j) over the cumulative steps M_j = d^1 + ... + d^j.
long long hm_pairing(const StabilityParam& theta, const FiltrationWeights& f);

/// Kernel condition sum_i theta_i d_i = 0 for semistable points to exist.
bool check_admissible(const StabilityParam& theta, const DimensionVector& d);

/// Compare slope(theta,a) against slope(theta,b) without building rationals;
/// returns <0, 0, >0. Both vectors must be nonzero.
int slope_compare(const StabilityParam& theta, const DimensionVector& a,
                  const DimensionVector& b);

namespace detail {
void require_same_size(int a, int b, const char* what);
}

} // namespace qmod
