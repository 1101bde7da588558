#pragma once

#include <string>
#include <vector>

#include "qmod/quiver.hpp"

namespace qmod {

/// Power series in t over the rationals, truncated at a fixed even degree N.
/// All arithmetic preserves N; mixing truncation degrees is an error.
class TruncatedSeries {
public:
    /// Zero series of the given truncation degree (even, >= 0).
    explicit TruncatedSeries(int trunc_degree);

    static TruncatedSeries constant(const Rational& c, int trunc_degree);
    static TruncatedSeries monomial(int exponent, const Rational& c, int trunc_degree);
    static TruncatedSeries one(int trunc_degree) { return constant(1, trunc_degree); }

    int trunc() const { return trunc_; }
    const Rational& coeff(int exponent) const;
    void set_coeff(int exponent, const Rational& c);

    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    bool is_zero() const;

private:
    int trunc_;
    std::vector<Rational> coeff_; // index = exponent, size trunc_ + 1
};

/// Expansion of 1/(1 - t^k) truncated at N: sum_{jk <= N} t^{jk}.
/// k must be even and positive (every series in scope is even).
TruncatedSeries geometric(int k, int trunc_degree);

/// Symbolic description of a product of classical groups.
struct GroupFactor {
    enum class Kind { GL, O, Sp };
    Kind kind = Kind::GL;
    long long rank = 0; // rank 0 factor = trivial group
};

struct GroupSpec {
    std::vector<GroupFactor> factors;
};

/// Rational-coefficient Poincare series of the classifying space:
///   BGL(n) = prod_{i<=n} 1/(1-t^{2i})
///   BO(n)  = prod_{i<=floor(n/2)} 1/(1-t^{4i})   (Pontryagin classes only)
///   BSp(n) = prod_{i<=n} 1/(1-t^{4i})
TruncatedSeries classifying_series(const GroupSpec& g, int trunc_degree);

std::string group_to_string(const GroupSpec& g);

} // namespace qmod
