#include "qmod/series.hpp"

#include <algorithm>

namespace qmod {

namespace {
void require_even_nonneg(int n) {
    if (n < 0 || n % 2 != 0)
        throw DomainError("truncation degree must be an even nonnegative integer, got " +
                          std::to_string(n));
}

void require_same_trunc(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.trunc() != b.trunc())
        throw StructuralError("series truncation degree mismatch: " +
                              std::to_string(a.trunc()) + " vs " + std::to_string(b.trunc()));
}
} // namespace

TruncatedSeries::TruncatedSeries(int trunc_degree) : trunc_(trunc_degree) {
    require_even_nonneg(trunc_degree);
    coeff_.assign(static_cast<size_t>(trunc_) + 1, Rational(0));
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int trunc_degree) {
    TruncatedSeries s(trunc_degree);
    s.coeff_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int exponent, const Rational& c, int trunc_degree) {
    TruncatedSeries s(trunc_degree);
    if (exponent < 0)
        throw DomainError("monomial exponent must be nonnegative");
    if (exponent <= trunc_degree)
        s.coeff_[static_cast<size_t>(exponent)] = c;
    return s;
}

const Rational& TruncatedSeries::coeff(int exponent) const {
    static const Rational zero(0);
    if (exponent < 0 || exponent > trunc_) return zero;
    return coeff_[static_cast<size_t>(exponent)];
}

void TruncatedSeries::set_coeff(int exponent, const Rational& c) {
    if (exponent < 0 || exponent > trunc_)
        throw StructuralError("set_coeff: exponent outside truncation range");
    coeff_[static_cast<size_t>(exponent)] = c;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    require_same_trunc(*this, rhs);
    for (int k = 0; k <= trunc_; ++k) coeff_[k] += rhs.coeff_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
    require_same_trunc(*this, rhs);
    for (int k = 0; k <= trunc_; ++k) coeff_[k] -= rhs.coeff_[k];
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_trunc(a, b);
    TruncatedSeries r(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) {
        if (a.coeff_[i] == 0) continue;
        for (int j = 0; i + j <= a.trunc(); ++j) {
            if (b.coeff_[j] == 0) continue;
            r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
        }
    }
    return r;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const Rational& c) { return c == 0; });
}

TruncatedSeries geometric(int k, int trunc_degree) {
    require_even_nonneg(trunc_degree);
    if (k <= 0 || k % 2 != 0)
        throw DomainError("geometric: period must be a positive even integer, got " +
                          std::to_string(k));
    TruncatedSeries s(trunc_degree);
    for (int e = 0; e <= trunc_degree; e += k) s.set_coeff(e, 1);
    return s;
}

TruncatedSeries classifying_series(const GroupSpec& g, int trunc_degree) {
    TruncatedSeries r = TruncatedSeries::one(trunc_degree);
    for (const auto& f : g.factors) {
        switch (f.kind) {
        case GroupFactor::Kind::GL:
            for (long long i = 1; i <= f.rank; ++i)
                r = r * geometric(static_cast<int>(std::min<long long>(2 * i, trunc_degree + 2)),
                                  trunc_degree);
            break;
        case GroupFactor::Kind::O:
            for (long long i = 1; i <= f.rank / 2; ++i)
                r = r * geometric(static_cast<int>(std::min<long long>(4 * i, trunc_degree + 2)),
                                  trunc_degree);
            break;
        case GroupFactor::Kind::Sp:
            for (long long i = 1; i <= f.rank; ++i)
                r = r * geometric(static_cast<int>(std::min<long long>(4 * i, trunc_degree + 2)),
                                  trunc_degree);
            break;
        }
    }
    return r;
}

std::string group_to_string(const GroupSpec& g) {
    if (g.factors.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < g.factors.size(); ++i) {
        const auto& f = g.factors[i];
        if (i) s += " x ";
        switch (f.kind) {
        case GroupFactor::Kind::GL: s += "GL(" + std::to_string(f.rank) + ")"; break;
        case GroupFactor::Kind::O: s += "O(" + std::to_string(f.rank) + ")"; break;
        case GroupFactor::Kind::Sp: s += "Sp(" + std::to_string(f.rank) + ")"; break;
        }
    }
    return s;
}

} // namespace qmod
