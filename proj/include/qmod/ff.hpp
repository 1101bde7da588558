#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "qmod/errors.hpp"

namespace qmod {

/// Dense matrix over the prime field F_q, q in {2,3,5}. Row-major; vectors
/// act as columns, subspace bases are stored as rows in reduced echelon form.
class FFMatrix {
public:
    FFMatrix() = default;
    FFMatrix(int rows, int cols, int q);

    static FFMatrix identity(int n, int q);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int field() const { return q_; }

    uint8_t at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, uint8_t v) { a_[static_cast<size_t>(i) * cols_ + j] = v; }

    FFMatrix mul(const FFMatrix& rhs) const;
    /// y = M v for a column vector v of length cols().
    std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const;

    /// Row vector i as a plain vector.
    std::vector<uint8_t> row(int i) const;
    /// Pointer to the contiguous row i.
    const uint8_t* row_ptr(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

    /// In-place reduced row echelon form; returns rank.
    int rref();

    friend bool operator==(const FFMatrix&, const FFMatrix&) = default;
    friend auto operator<=>(const FFMatrix& x, const FFMatrix& y) {
        return std::tie(x.rows_, x.cols_, x.a_) <=> std::tie(y.rows_, y.cols_, y.a_);
    }

private:
    int rows_ = 0, cols_ = 0, q_ = 2;
    std::vector<uint8_t> a_;
};

int ff_inverse(int x, int q);

/// Subspace of F_q^n presented by an RREF basis (rows). Rank = rows().
struct Subspace {
    FFMatrix basis; // rows in reduced echelon form
    int dim() const { return basis.rows(); }
    int ambient() const { return basis.cols(); }
};

/// Reduce v against the RREF basis rows; the remainder is supported on the
/// non-pivot coordinates.
std::vector<uint8_t> reduce_against(const FFMatrix& rref_basis, std::vector<uint8_t> v);

/// Membership of a column vector in the span of an RREF basis.
bool in_span(const FFMatrix& rref_basis, const std::vector<uint8_t>& v);

/// Containment U <= W of subspaces of the same ambient space.
bool subspace_contained(const Subspace& u, const Subspace& w);

/// Coordinates of v in the basis (rows of rref_basis), if v lies in the span.
std::optional<std::vector<uint8_t>> coords_in_basis(const FFMatrix& rref_basis,
                                                    const std::vector<uint8_t>& v);

/// All subspaces of F_q^n in a fixed canonical order: ascending dimension,
/// then pivot columns lexicographically, then free entries as an odometer.
/// Cached per (q, n); do not mutate the returned list.
const std::vector<Subspace>& all_subspaces(int q, int n);

/// Span of the given (row) vectors, as an RREF subspace.
Subspace span_of(int q, int n, const std::vector<std::vector<uint8_t>>& rows);

/// Null space {v : M v = 0} as an RREF subspace of F_q^{cols}.
Subspace kernel_of(const FFMatrix& m);

} // namespace qmod
