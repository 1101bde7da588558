#include "qmod/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qmod {

namespace detail {
void require_same_size(int a, int b, const char* what) {
    if (a != b)
        throw StructuralError(std::string(what) + ": key sets differ (" +
                              std::to_string(a) + " vs " + std::to_string(b) + ")");
}
} // namespace detail

Quiver Quiver::make(std::vector<std::string> vertex_ids,
                    const std::vector<std::array<std::string, 3>>& arrow_specs) {
    Quiver q;
    q.vertices = std::move(vertex_ids);

    std::set<std::string> seen_v(q.vertices.begin(), q.vertices.end());
    if (seen_v.size() != q.vertices.size())
        throw StructuralError("quiver: duplicate vertex id");

    std::set<std::string> seen_a;
    for (const auto& [name, tail, head] : arrow_specs) {
        if (!seen_a.insert(name).second)
            throw StructuralError("quiver: duplicate arrow id '" + name + "'");
        int t = q.vertex_index(tail);
        int h = q.vertex_index(head);
        if (t < 0)
            throw StructuralError("quiver: arrow '" + name + "' references unknown tail vertex '" + tail + "'");
        if (h < 0)
            throw StructuralError("quiver: arrow '" + name + "' references unknown head vertex '" + head + "'");
        q.arrows.push_back({name, t, h});
    }
    return q;
}

int Quiver::vertex_index(std::string_view id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices[i] == id) return i;
    return -1;
}

int Quiver::arrow_index(std::string_view name) const {
    for (int i = 0; i < arrow_count(); ++i)
        if (arrows[i].name == name) return i;
    return -1;
}

bool Quiver::connected() const {
    if (vertices.empty()) return true;
    std::vector<char> seen(vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& a : arrows) {
            int nbr = -1;
            if (a.tail == v) nbr = a.head;
            else if (a.head == v) nbr = a.tail;
            if (nbr >= 0 && !seen[nbr]) {
                seen[nbr] = 1;
                stack.push_back(nbr);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

long long DimensionVector::total() const {
    return std::accumulate(entries.begin(), entries.end(), 0LL);
}

bool DimensionVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](long long x) { return x == 0; });
}

DimensionVector operator+(const DimensionVector& a, const DimensionVector& b) {
    detail::require_same_size(a.size(), b.size(), "dimension vector sum");
    DimensionVector r = a;
    for (int i = 0; i < b.size(); ++i) r.entries[i] += b[i];
    return r;
}

DimensionVector operator-(const DimensionVector& a, const DimensionVector& b) {
    detail::require_same_size(a.size(), b.size(), "dimension vector difference");
    DimensionVector r = a;
    for (int i = 0; i < b.size(); ++i) r.entries[i] -= b[i];
    return r;
}

long long theta_value(const StabilityParam& theta, const DimensionVector& d) {
    detail::require_same_size(theta.size(), d.size(), "theta_value");
    long long s = 0;
    for (int i = 0; i < d.size(); ++i) s += theta[i] * d[i];
    return s;
}

Rational slope(const StabilityParam& theta, const DimensionVector& d) {
    if (d.is_zero())
        throw DomainError("slope: zero dimension vector");
    return Rational(theta_value(theta, d), d.total());
}

long long euler_form(const Quiver& q, const DimensionVector& d, const DimensionVector& e) {
    detail::require_same_size(d.size(), q.vertex_count(), "euler_form");
    detail::require_same_size(e.size(), q.vertex_count(), "euler_form");
    long long s = 0;
    for (int i = 0; i < d.size(); ++i) s += d[i] * e[i];
    for (const auto& a : q.arrows) s -= d[a.tail] * e[a.head];
    return s;
}

long long hm_pairing(const StabilityParam& theta, const FiltrationWeights& f) {
    if (f.pieces.empty())
        throw StructuralError("hm_pairing: empty filtration");
    DimensionVector partial(std::vector<long long>(f.pieces.front().size(), 0));
    long long s = 0;
    for (const auto& piece : f.pieces) {
        if (piece.is_zero())
            throw StructuralError("hm_pairing: filtration step with zero graded piece");
        partial = partial + piece;
        s += theta_value(theta, partial);
    }
    return s;
}

bool check_admissible(const StabilityParam& theta, const DimensionVector& d) {
    return theta_value(theta, d) == 0;
}

int slope_compare(const StabilityParam& theta, const DimensionVector& a,
                  const DimensionVector& b) {
    // theta(a)/|a| vs theta(b)/|b|, cross-multiplied; totals are positive.
    long long lhs = theta_value(theta, a) * b.total();
    long long rhs = theta_value(theta, b) * a.total();
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

} // namespace qmod
