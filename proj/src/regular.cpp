#include "fintower/regular.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace fintower {

namespace {

std::vector<std::vector<GaussianRational>> to_grid(const ExactMatrix& a) {
    std::vector<std::vector<GaussianRational>> grid(
        a.rows(), std::vector<GaussianRational>(a.cols()));
    for (const auto& e : a.entries()) {
        grid[e.row][e.col] = e.value;
    }
    return grid;
}

// Forward elimination only: finds a maximal set of independent rows and
// columns (by original index) without the back-substitution cost of a full
// reduced form.
struct PivotProfile {
    std::vector<std::size_t> rows;  // ascending original row indices
    std::vector<std::size_t> cols;  // ascending pivot columns
};

PivotProfile pivot_profile(const ExactMatrix& a) {
    auto grid = to_grid(a);
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> origin(rows);
    std::iota(origin.begin(), origin.end(), std::size_t{0});
    PivotProfile out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!grid[i][col].is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(grid[pivot], grid[r]);
        std::swap(origin[pivot], origin[r]);
        const GaussianRational inv = grid[r][col].inverse();
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (grid[i][col].is_zero()) {
                continue;
            }
            const GaussianRational factor = grid[i][col] * inv;
            for (std::size_t j = col; j < cols; ++j) {
                grid[i][j] -= factor * grid[r][j];
            }
        }
        out.rows.push_back(origin[r]);
        out.cols.push_back(col);
        ++r;
    }
    std::sort(out.rows.begin(), out.rows.end());
    return out;
}

// Dense submatrix over chosen row/column index lists (nullptr = all).
ExactMatrix select(const ExactMatrix& a, const std::vector<std::size_t>* row_idx,
                   const std::vector<std::size_t>* col_idx) {
    const std::size_t out_rows = row_idx ? row_idx->size() : a.rows();
    const std::size_t out_cols = col_idx ? col_idx->size() : a.cols();
    std::vector<MatrixEntry> entries;
    for (std::size_t i = 0; i < out_rows; ++i) {
        const std::size_t src_i = row_idx ? (*row_idx)[i] : i;
        for (std::size_t j = 0; j < out_cols; ++j) {
            const std::size_t src_j = col_idx ? (*col_idx)[j] : j;
            const auto& v = a.at(src_i, src_j);
            if (!v.is_zero()) {
                entries.push_back({i, j, v});
            }
        }
    }
    return ExactMatrix::from_entries(out_rows, out_cols, std::move(entries))
        .with_repr(Repr::dense);
}

}  // namespace

RrefResult rref(const ExactMatrix& a) {
    auto grid = to_grid(a);
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!grid[i][col].is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(grid[pivot], grid[r]);
        const GaussianRational inv = grid[r][col].inverse();
        for (std::size_t j = col; j < cols; ++j) {
            grid[r][j] *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || grid[i][col].is_zero()) {
                continue;
            }
            const GaussianRational factor = grid[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                grid[i][j] -= factor * grid[r][j];
            }
        }
        pivots.push_back(col);
        ++r;
    }
    RrefResult out;
    out.reduced = ExactMatrix::from_rows(std::move(grid));
    out.pivot_cols = std::move(pivots);
    out.rank = r;
    return out;
}

std::size_t rank_exact(const ExactMatrix& a) {
    if (a.has_diagonal_support() || a.is_generalized_permutation()) {
        return a.nonzero_count();
    }
    return pivot_profile(a).cols.size();
}

ExactMatrix inverse(const ExactMatrix& a) {
    if (!a.is_square()) {
        throw DimensionMismatch("inverse requires a square matrix, got " +
                                a.shape_string());
    }
    const std::size_t n = a.rows();
    if (a.has_diagonal_support()) {
        auto diag = a.diagonal_values();
        for (auto& d : diag) {
            if (d.is_zero()) {
                throw SingularMatrixError("matrix of shape " + a.shape_string() +
                                          " is singular");
            }
            d = d.inverse();
        }
        ExactMatrix out = ExactMatrix::diagonal_matrix(std::move(diag));
        return a.repr() == Repr::diagonal ? out : out.with_repr(a.repr());
    }
    if (a.is_generalized_permutation()) {
        if (a.nonzero_count() < n) {
            throw SingularMatrixError("matrix of shape " + a.shape_string() +
                                      " is singular");
        }
        std::vector<MatrixEntry> entries = a.entries();
        for (auto& e : entries) {
            std::swap(e.row, e.col);
            e.value = e.value.inverse();
        }
        return ExactMatrix::from_entries(n, n, std::move(entries));
    }
    const RrefResult red = rref(hcat(a, ExactMatrix::identity(n)));
    // [a | I] always has row rank n; a is invertible exactly when every
    // pivot lands in the left block, i.e. no pivot column reaches the
    // identity block.
    if (red.rank < n ||
        (!red.pivot_cols.empty() && red.pivot_cols.back() >= n)) {
        throw SingularMatrixError("matrix of shape " + a.shape_string() +
                                  " is singular");
    }
    std::vector<MatrixEntry> entries;
    for (const auto& e : red.reduced.entries()) {
        if (e.col >= n) {
            entries.push_back({e.row, e.col - n, e.value});
        }
    }
    return ExactMatrix::from_entries(n, n, std::move(entries)).with_repr(Repr::dense);
}

ExactMatrix kernel_basis(const ExactMatrix& a) {
    const RrefResult red = rref(a);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (const std::size_t p : red.pivot_cols) {
        is_pivot[p] = true;
    }
    std::vector<MatrixEntry> entries;
    std::size_t out_col = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        entries.push_back({f, out_col, GaussianRational(1)});
        for (std::size_t t = 0; t < red.pivot_cols.size(); ++t) {
            const auto& v = red.reduced.at(t, f);
            if (!v.is_zero()) {
                entries.push_back({red.pivot_cols[t], out_col, -v});
            }
        }
        ++out_col;
    }
    return ExactMatrix::from_entries(cols, out_col, std::move(entries))
        .with_repr(Repr::dense);
}

ExactMatrix column_space_basis(const ExactMatrix& a) {
    const PivotProfile profile = pivot_profile(a);
    return select(a, nullptr, &profile.cols);
}

ExactMatrix column_space_projection(const ExactMatrix& a) {
    const ExactMatrix basis = column_space_basis(a);
    if (basis.cols() == 0) {
        return ExactMatrix::zeros(a.rows(), a.rows(), Repr::dense);
    }
    const ExactMatrix gram = adjoint(basis) * basis;
    return basis * inverse(gram) * adjoint(basis);
}

ExactMatrix partial_inverse(const ExactMatrix& a) {
    if (a.has_diagonal_support()) {
        std::vector<MatrixEntry> entries;
        for (const auto& e : a.entries()) {
            entries.push_back({e.col, e.row, e.value.inverse()});
        }
        ExactMatrix out =
            ExactMatrix::from_entries(a.cols(), a.rows(), std::move(entries));
        if (a.repr() == Repr::diagonal && out.is_square()) {
            return out.with_repr(Repr::diagonal);
        }
        if (a.repr() == Repr::dense) {
            return out.with_repr(Repr::dense);
        }
        return out;
    }
    if (a.repr() != Repr::dense && a.is_generalized_permutation()) {
        std::vector<MatrixEntry> entries = a.entries();
        for (auto& e : entries) {
            std::swap(e.row, e.col);
            e.value = e.value.inverse();
        }
        return ExactMatrix::from_entries(a.cols(), a.rows(), std::move(entries));
    }

    const PivotProfile profile = pivot_profile(a);
    const std::size_t r = profile.cols.size();
    if (r == 0) {
        return ExactMatrix::zeros(a.cols(), a.rows(), Repr::dense);
    }
    if (a.is_square() && r == a.rows()) {
        return inverse(a);
    }
    // Skeleton decomposition a = C W^(-1) D over the pivot rows and columns:
    // C, D, W are submatrices of a, so every Gram product below works on
    // entries no larger than the input's.  The closed form
    //   pinv(a) = D* (D D*)^(-1) W (C* C)^(-1) C*
    // follows from the full-rank factorization (C, W^(-1) D); uniqueness of
    // the Moore-Penrose inverse makes the construction choice invisible.
    const ExactMatrix c = select(a, nullptr, &profile.cols);
    const ExactMatrix d = select(a, &profile.rows, nullptr);
    const ExactMatrix w = select(a, &profile.rows, &profile.cols);
    const ExactMatrix row_gram_inv = inverse(mul(d, adjoint(d)));
    const ExactMatrix col_gram_inv = inverse(mul(adjoint(c), c));
    const ExactMatrix core = mul(mul(row_gram_inv, w), col_gram_inv);
    return mul(mul(adjoint(d), core), adjoint(c));
}

Projection Projection::checked(ExactMatrix p) {
    if (!p.is_square()) {
        throw NotAProjection("projection must be square, got " + p.shape_string());
    }
    if (!p.is_hermitian()) {
        throw NotAProjection("matrix is not hermitian");
    }
    if (mul(p, p) != p) {
        throw NotAProjection("matrix is not idempotent");
    }
    return Projection(std::move(p));
}

Projection Projection::trusted(ExactMatrix p) { return Projection(std::move(p)); }

std::size_t Projection::rank() const {
    const GaussianRational t = matrix_.trace();
    return numerator(t.re()).convert_to<std::size_t>();
}

bool is_projection_matrix(const ExactMatrix& p) {
    return p.is_square() && p.is_hermitian() && mul(p, p) == p;
}

Projection left_support(const ExactMatrix& x) {
    return Projection::checked(mul(x, partial_inverse(x)));
}

Projection right_support(const ExactMatrix& x) {
    return Projection::checked(mul(partial_inverse(x), x));
}

namespace {

// Join of two projections with diagonal support: entrywise 0/1 OR.
ExactMatrix diagonal_join(const ExactMatrix& p, const ExactMatrix& q) {
    auto dp = p.diagonal_values();
    const auto dq = q.diagonal_values();
    for (std::size_t i = 0; i < dp.size(); ++i) {
        dp[i] = dp[i] + dq[i] - dp[i] * dq[i];
    }
    return ExactMatrix::diagonal_matrix(std::move(dp));
}

}  // namespace

Supports supports(const ExactMatrix& x) {
    if (!x.is_square()) {
        throw DimensionMismatch("supports require a square matrix, got " +
                                x.shape_string());
    }
    const ExactMatrix ix = partial_inverse(x);
    Projection left = Projection::checked(mul(x, ix));
    Projection right = Projection::checked(mul(ix, x));
    ExactMatrix join;
    if (left.matrix().has_diagonal_support() &&
        right.matrix().has_diagonal_support()) {
        join = diagonal_join(left.matrix(), right.matrix());
    } else {
        join = column_space_projection(hcat(x, adjoint(x)));
    }
    Projection support = Projection::checked(std::move(join));
    return Supports{std::move(left), std::move(right), std::move(support)};
}

}  // namespace fintower
