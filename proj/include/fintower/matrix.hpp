#pragma once

#include "fintower/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fintower {

/// Shape mismatch between two operands; the message names both shapes.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Storage layout of an ExactMatrix.  All operations are defined on the
/// dense view; the structured layouts are equivalent representations with
/// cheaper arithmetic, not different semantics.
enum class Repr { dense, diagonal, unit_sparse };

const char* repr_name(Repr repr);

/// One nonzero coordinate of a unit_sparse matrix (0-based).
struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    GaussianRational value;
};

/// Exact matrix over Q(i).
///
/// Invariants: diagonal storage holds min(rows, cols) diagonal values;
/// unit_sparse storage holds nonzero entries at distinct positions in
/// row-major order.  Equality, arithmetic, and serialization depend only on
/// the dense view, never on the representation tag.
class ExactMatrix {
public:
    ExactMatrix() = default;

    static ExactMatrix zeros(std::size_t rows, std::size_t cols,
                             Repr repr = Repr::dense);
    static ExactMatrix identity(std::size_t n, Repr repr = Repr::diagonal);
    static ExactMatrix from_rows(std::vector<std::vector<GaussianRational>> rows);
    static ExactMatrix diagonal_matrix(std::vector<GaussianRational> diag);
    /// Duplicate positions are summed; zero values are dropped.
    static ExactMatrix from_entries(std::size_t rows, std::size_t cols,
                                    std::vector<MatrixEntry> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Repr repr() const { return repr_; }
    bool is_square() const { return rows_ == cols_; }
    std::string shape_string() const;

    /// Dense-view element (0-based); valid for every representation.
    const GaussianRational& at(std::size_t i, std::size_t j) const;

    /// Nonzero entries of the dense view in row-major order.
    std::vector<MatrixEntry> entries() const;
    std::size_t nonzero_count() const;

    bool is_zero() const;
    bool is_hermitian() const;
    /// True when the dense view is a diagonal matrix, regardless of repr.
    bool has_diagonal_support() const;
    /// True when no two nonzero entries share a row or a column.
    bool is_generalized_permutation() const;

    /// Main-diagonal values of the dense view, length min(rows, cols).
    std::vector<GaussianRational> diagonal_values() const;

    /// Sum of diagonal entries (square only).
    GaussianRational trace() const;

    /// Copy with the requested representation; converting to diagonal or
    /// unit_sparse requires the dense view to fit that layout.
    ExactMatrix with_repr(Repr repr) const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) {
        return !(a == b);
    }

private:
    Repr repr_ = Repr::dense;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    // dense: rows*cols row-major; diagonal: min(rows, cols) values.
    std::vector<GaussianRational> store_;
    // unit_sparse: sorted nonzero entries.
    std::vector<MatrixEntry> sparse_;

    GaussianRational& dense_ref(std::size_t i, std::size_t j) {
        return store_[i * cols_ + j];
    }
    friend ExactMatrix mul(const ExactMatrix&, const ExactMatrix&);
    friend ExactMatrix add_scaled(const ExactMatrix&, const GaussianRational&,
                                  const ExactMatrix&);
    friend ExactMatrix scalar_mul(const GaussianRational&, const ExactMatrix&);
    friend ExactMatrix adjoint(const ExactMatrix&);
    friend ExactMatrix transpose(const ExactMatrix&);
    friend ExactMatrix entrywise_conjugate(const ExactMatrix&);
};

/// Dense storage is capped at 2^20 scalars; structured layouts are not.
inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 20;

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix sub(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix scalar_mul(const GaussianRational& s, const ExactMatrix& a);
ExactMatrix adjoint(const ExactMatrix& a);
ExactMatrix transpose(const ExactMatrix& a);
/// Entrywise complex conjugation (adjoint of the transpose).
ExactMatrix entrywise_conjugate(const ExactMatrix& a);
/// a + s*b without materializing the intermediate product.
ExactMatrix add_scaled(const ExactMatrix& a, const GaussianRational& s,
                       const ExactMatrix& b);

inline ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    return add(a, b);
}
inline ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    return sub(a, b);
}
inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    return mul(a, b);
}
inline ExactMatrix operator*(const GaussianRational& s, const ExactMatrix& a) {
    return scalar_mul(s, a);
}
inline ExactMatrix operator-(const ExactMatrix& a) {
    return scalar_mul(GaussianRational(-1), a);
}

/// [a | b] and [a ; b]; dense results.
ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vcat(const ExactMatrix& a, const ExactMatrix& b);

/// Throws DimensionMismatch naming both shapes unless they agree.
void require_same_shape(const ExactMatrix& a, const ExactMatrix& b,
                        const char* context);
void require_inner_match(const ExactMatrix& a, const ExactMatrix& b,
                         const char* context);

}  // namespace fintower
