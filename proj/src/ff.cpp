#include "qmod/ff.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qmod {

namespace {
void require_prime_field(int q) {
    if (q != 2 && q != 3 && q != 5)
        throw DomainError("finite field order must be one of {2,3,5}, got " + std::to_string(q));
}
} // namespace

int ff_inverse(int x, int q) {
    x %= q;
    if (x < 0) x += q;
    if (x == 0) throw DomainError("ff_inverse of zero");
    for (int y = 1; y < q; ++y)
        if (x * y % q == 1) return y;
    throw DomainError("ff_inverse: not a field");
}

FFMatrix::FFMatrix(int rows, int cols, int q) : rows_(rows), cols_(cols), q_(q) {
    require_prime_field(q);
    if (rows < 0 || cols < 0) throw StructuralError("FFMatrix: negative shape");
    a_.assign(static_cast<size_t>(rows) * cols, 0);
}

FFMatrix FFMatrix::identity(int n, int q) {
    FFMatrix m(n, n, q);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FFMatrix FFMatrix::mul(const FFMatrix& rhs) const {
    if (cols_ != rhs.rows_ || q_ != rhs.q_)
        throw StructuralError("FFMatrix::mul: shape or field mismatch");
    FFMatrix r(rows_, rhs.cols_, q_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int v = at(i, k);
            if (!v) continue;
            for (int j = 0; j < rhs.cols_; ++j)
                r.set(i, j, static_cast<uint8_t>((r.at(i, j) + v * rhs.at(k, j)) % q_));
        }
    return r;
}

std::vector<uint8_t> FFMatrix::apply(const std::vector<uint8_t>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw StructuralError("FFMatrix::apply: vector length mismatch");
    std::vector<uint8_t> y(static_cast<size_t>(rows_), 0);
    for (int i = 0; i < rows_; ++i) {
        int s = 0;
        for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        y[i] = static_cast<uint8_t>(s % q_);
    }
    return y;
}

std::vector<uint8_t> FFMatrix::row(int i) const {
    return std::vector<uint8_t>(a_.begin() + static_cast<size_t>(i) * cols_,
                                a_.begin() + static_cast<size_t>(i + 1) * cols_);
}

int FFMatrix::rref() {
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int pivot = -1;
        for (int i = r; i < rows_; ++i)
            if (at(i, c)) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols_; ++j) {
                uint8_t t = at(r, j);
                set(r, j, at(pivot, j));
                set(pivot, j, t);
            }
        int inv = ff_inverse(at(r, c), q_);
        for (int j = 0; j < cols_; ++j)
            set(r, j, static_cast<uint8_t>(at(r, j) * inv % q_));
        for (int i = 0; i < rows_; ++i) {
            if (i == r || !at(i, c)) continue;
            int f = at(i, c);
            for (int j = 0; j < cols_; ++j)
                set(i, j, static_cast<uint8_t>((at(i, j) + (q_ - f) * at(r, j)) % q_));
        }
        ++r;
    }
    // drop zero rows
    FFMatrix trimmed(r, cols_, q_);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols_; ++j) trimmed.set(i, j, at(i, j));
    *this = trimmed;
    return r;
}

std::vector<uint8_t> reduce_against(const FFMatrix& b, std::vector<uint8_t> v) {
    int q = b.field();
    for (int i = 0; i < b.rows(); ++i) {
        int pc = -1;
        for (int j = 0; j < b.cols(); ++j)
            if (b.at(i, j)) { pc = j; break; }
        if (pc < 0) continue;
        int f = v[pc] % q;
        if (!f) continue;
        for (int j = 0; j < b.cols(); ++j)
            v[j] = static_cast<uint8_t>((v[j] + (q - f) * b.at(i, j)) % q);
    }
    return v;
}

bool in_span(const FFMatrix& b, const std::vector<uint8_t>& v) {
    auto r = reduce_against(b, v);
    for (uint8_t x : r)
        if (x) return false;
    return true;
}

bool subspace_contained(const Subspace& u, const Subspace& w) {
    for (int i = 0; i < u.basis.rows(); ++i)
        if (!in_span(w.basis, u.basis.row(i))) return false;
    return true;
}

std::optional<std::vector<uint8_t>> coords_in_basis(const FFMatrix& b,
                                                    const std::vector<uint8_t>& v) {
    int q = b.field();
    std::vector<uint8_t> coords(static_cast<size_t>(b.rows()), 0);
    std::vector<uint8_t> r = v;
    for (int i = 0; i < b.rows(); ++i) {
        int pc = -1;
        for (int j = 0; j < b.cols(); ++j)
            if (b.at(i, j)) { pc = j; break; }
        if (pc < 0) continue;
        int f = r[pc] % q;
        coords[i] = static_cast<uint8_t>(f);
        if (!f) continue;
        for (int j = 0; j < b.cols(); ++j)
            r[j] = static_cast<uint8_t>((r[j] + (q - f) * b.at(i, j)) % q);
    }
    for (uint8_t x : r)
        if (x) return std::nullopt;
    return coords;
}

namespace {

void emit_subspaces_of_dim(int q, int n, int k, std::vector<Subspace>& out) {
    if (k == 0) {
        out.push_back({FFMatrix(0, n, q)});
        return;
    }
    // choose pivot columns c_1 < ... < c_k, then odometer over free entries
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        // free positions: (i, j) with j > piv[i], j not a pivot column
        std::vector<std::pair<int, int>> free_pos;
        std::vector<char> is_piv(n, 0);
        for (int c : piv) is_piv[c] = 1;
        for (int i = 0; i < k; ++i)
            for (int j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.push_back({i, j});

        std::vector<uint8_t> fill(free_pos.size(), 0);
        while (true) {
            FFMatrix m(k, n, q);
            for (int i = 0; i < k; ++i) m.set(i, piv[i], 1);
            for (size_t t = 0; t < free_pos.size(); ++t)
                m.set(free_pos[t].first, free_pos[t].second, fill[t]);
            out.push_back({m});
            size_t t = fill.size();
            while (t > 0) {
                --t;
                if (fill[t] + 1 < q) {
                    ++fill[t];
                    std::fill(fill.begin() + t + 1, fill.end(), 0);
                    break;
                }
                if (t == 0) { t = SIZE_MAX; break; }
            }
            if (fill.empty() || t == SIZE_MAX) break;
        }

        // next pivot combination, lexicographic
        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

} // namespace

const std::vector<Subspace>& all_subspaces(int q, int n) {
    require_prime_field(q);
    if (n < 0 || n > 12)
        throw BudgetError("subspace enumeration limited to ambient dimension <= 12", n);
    static std::map<std::pair<int, int>, std::vector<Subspace>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Subspace> out;
    for (int k = 0; k <= n; ++k) emit_subspaces_of_dim(q, n, k, out);
    return cache.emplace(key, std::move(out)).first->second;
}

Subspace kernel_of(const FFMatrix& m) {
    FFMatrix r = m;
    r.rref();
    int n = m.cols(), q = m.field();
    std::vector<int> pivot_col(r.rows(), -1);
    std::vector<char> is_piv(n, 0);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < n; ++j)
            if (r.at(i, j)) {
                pivot_col[i] = j;
                is_piv[j] = 1;
                break;
            }
    std::vector<std::vector<uint8_t>> basis;
    for (int j = 0; j < n; ++j) {
        if (is_piv[j]) continue;
        std::vector<uint8_t> v(static_cast<size_t>(n), 0);
        v[j] = 1;
        for (int i = 0; i < r.rows(); ++i)
            if (pivot_col[i] >= 0)
                v[pivot_col[i]] = static_cast<uint8_t>((q - r.at(i, j) % q) % q);
        basis.push_back(std::move(v));
    }
    return span_of(q, n, basis);
}

Subspace span_of(int q, int n, const std::vector<std::vector<uint8_t>>& rows) {
    FFMatrix m(static_cast<int>(rows.size()), n, q);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw StructuralError("span_of: row length mismatch");
        for (int j = 0; j < n; ++j) m.set(static_cast<int>(i), j, rows[i][j] % q);
    }
    m.rref();
    return {m};
}

} // namespace qmod
