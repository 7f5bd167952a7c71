#pragma once

#include "fintower/matrix.hpp"

#include <cstddef>
#include <vector>

namespace fintower {

struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotAProjection : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Reduced row echelon form with pivot bookkeeping; exact.
struct RrefResult {
    ExactMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

RrefResult rref(const ExactMatrix& a);

/// Exact rank.  Diagonal and generalized-permutation layouts count nonzero
/// entries; everything else goes through row reduction.
std::size_t rank_exact(const ExactMatrix& a);

/// Exact inverse of a square matrix; throws SingularMatrixError.
ExactMatrix inverse(const ExactMatrix& a);

/// Columns form a basis of the null space; shape cols(a) x nullity.
ExactMatrix kernel_basis(const ExactMatrix& a);

/// The pivot columns of a; shape rows(a) x rank.
ExactMatrix column_space_basis(const ExactMatrix& a);

/// Orthogonal projection onto the column space: B (B*B)^(-1) B* over a
/// column-space basis B.  Exact, hermitian, idempotent.
ExactMatrix column_space_projection(const ExactMatrix& a);

/// Moore-Penrose partial inverse via the full-rank factorization a = F G
/// read off the reduced row echelon form:
///   pinv(a) = G* (G G*)^(-1) (F* F)^(-1) F*.
/// Satisfies a pinv(a) a = a, pinv(a) a pinv(a) = pinv(a), and both
/// a pinv(a), pinv(a) a hermitian; those four conditions pin it uniquely.
ExactMatrix partial_inverse(const ExactMatrix& a);

/// A matrix validated to be an exact orthogonal projection: p = p* = p^2.
class Projection {
public:
    static Projection checked(ExactMatrix p);
    /// Wraps without re-validating; for internal constructions whose output
    /// is a projection by design.
    static Projection trusted(ExactMatrix p);

    const ExactMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    /// rank = trace for a projection; exact integer.
    std::size_t rank() const;

    friend bool operator==(const Projection& a, const Projection& b) {
        return a.matrix_ == b.matrix_;
    }
    friend bool operator!=(const Projection& a, const Projection& b) {
        return !(a == b);
    }

private:
    explicit Projection(ExactMatrix m) : matrix_(std::move(m)) {}
    ExactMatrix matrix_;
};

bool is_projection_matrix(const ExactMatrix& p);

/// Support projections of a square matrix x:
///   left    = x pinv(x)    (range projection),
///   right   = pinv(x) x    (co-range projection),
///   support = left v right (projection onto range(x) + range(x*)).
struct Supports {
    Projection left;
    Projection right;
    Projection support;
};

Supports supports(const ExactMatrix& x);

/// Range projection alone: l(x) = x pinv(x).
Projection left_support(const ExactMatrix& x);
/// Co-range projection alone: r(x) = pinv(x) x.
Projection right_support(const ExactMatrix& x);

}  // namespace fintower
