#include "fintower/matrix.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace fintower {

namespace {

const GaussianRational kZeroScalar{};

void check_dense_cap(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols != 0 && rows > kMaxDenseEntries / cols) {
        throw std::length_error("dense storage for shape " + std::to_string(rows) +
                                "x" + std::to_string(cols) +
                                " exceeds the dense entry cap");
    }
}

}  // namespace

const char* repr_name(Repr repr) {
    switch (repr) {
        case Repr::dense: return "dense";
        case Repr::diagonal: return "diagonal";
        case Repr::unit_sparse: return "unit-sparse";
    }
    return "unknown";
}

std::string ExactMatrix::shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ExactMatrix ExactMatrix::zeros(std::size_t rows, std::size_t cols, Repr repr) {
    ExactMatrix m;
    m.repr_ = repr;
    m.rows_ = rows;
    m.cols_ = cols;
    switch (repr) {
        case Repr::dense:
            check_dense_cap(rows, cols);
            m.store_.assign(rows * cols, GaussianRational());
            break;
        case Repr::diagonal:
            m.store_.assign(std::min(rows, cols), GaussianRational());
            break;
        case Repr::unit_sparse:
            break;
    }
    return m;
}

ExactMatrix ExactMatrix::identity(std::size_t n, Repr repr) {
    if (repr == Repr::diagonal) {
        return diagonal_matrix(std::vector<GaussianRational>(n, GaussianRational(1)));
    }
    ExactMatrix m = zeros(n, n, repr);
    if (repr == Repr::dense) {
        for (std::size_t i = 0; i < n; ++i) {
            m.dense_ref(i, i) = GaussianRational(1);
        }
        return m;
    }
    std::vector<MatrixEntry> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        entries.push_back({i, i, GaussianRational(1)});
    }
    return from_entries(n, n, std::move(entries));
}

ExactMatrix ExactMatrix::from_rows(std::vector<std::vector<GaussianRational>> rows) {
    ExactMatrix m;
    m.repr_ = Repr::dense;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    check_dense_cap(m.rows_, m.cols_);
    m.store_.reserve(m.rows_ * m.cols_);
    for (const auto& row : rows) {
        if (row.size() != m.cols_) {
            throw std::invalid_argument(
                "ragged row of length " + std::to_string(row.size()) +
                " in a matrix with " + std::to_string(m.cols_) + " columns");
        }
        for (const auto& v : row) {
            m.store_.push_back(v);
        }
    }
    return m;
}

ExactMatrix ExactMatrix::diagonal_matrix(std::vector<GaussianRational> diag) {
    ExactMatrix m;
    m.repr_ = Repr::diagonal;
    m.rows_ = diag.size();
    m.cols_ = diag.size();
    m.store_ = std::move(diag);
    return m;
}

ExactMatrix ExactMatrix::from_entries(std::size_t rows, std::size_t cols,
                                      std::vector<MatrixEntry> entries) {
    for (const auto& e : entries) {
        if (e.row >= rows || e.col >= cols) {
            throw std::out_of_range(
                "entry at (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                ") outside shape " + std::to_string(rows) + "x" + std::to_string(cols));
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) {
                  return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    std::vector<MatrixEntry> merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
        if (!merged.empty() && merged.back().row == e.row &&
            merged.back().col == e.col) {
            merged.back().value += e.value;
        } else {
            merged.push_back(std::move(e));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const MatrixEntry& e) { return e.value.is_zero(); }),
                 merged.end());
    ExactMatrix m;
    m.repr_ = Repr::unit_sparse;
    m.rows_ = rows;
    m.cols_ = cols;
    m.sparse_ = std::move(merged);
    return m;
}

const GaussianRational& ExactMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw std::out_of_range("index (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") outside shape " +
                                shape_string());
    }
    switch (repr_) {
        case Repr::dense:
            return store_[i * cols_ + j];
        case Repr::diagonal:
            return (i == j && i < store_.size()) ? store_[i] : kZeroScalar;
        case Repr::unit_sparse: {
            auto it = std::lower_bound(
                sparse_.begin(), sparse_.end(), std::make_pair(i, j),
                [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& key) {
                    return e.row != key.first ? e.row < key.first : e.col < key.second;
                });
            if (it != sparse_.end() && it->row == i && it->col == j) {
                return it->value;
            }
            return kZeroScalar;
        }
    }
    return kZeroScalar;
}

std::vector<MatrixEntry> ExactMatrix::entries() const {
    std::vector<MatrixEntry> out;
    switch (repr_) {
        case Repr::dense:
            for (std::size_t i = 0; i < rows_; ++i) {
                for (std::size_t j = 0; j < cols_; ++j) {
                    const auto& v = store_[i * cols_ + j];
                    if (!v.is_zero()) {
                        out.push_back({i, j, v});
                    }
                }
            }
            break;
        case Repr::diagonal:
            for (std::size_t i = 0; i < store_.size(); ++i) {
                if (!store_[i].is_zero()) {
                    out.push_back({i, i, store_[i]});
                }
            }
            break;
        case Repr::unit_sparse:
            out = sparse_;
            break;
    }
    return out;
}

std::size_t ExactMatrix::nonzero_count() const {
    if (repr_ == Repr::unit_sparse) {
        return sparse_.size();
    }
    std::size_t n = 0;
    for (const auto& v : store_) {
        if (!v.is_zero()) {
            ++n;
        }
    }
    return n;
}

bool ExactMatrix::is_zero() const { return nonzero_count() == 0; }

bool ExactMatrix::is_hermitian() const {
    if (!is_square()) {
        return false;
    }
    for (const auto& e : entries()) {
        if (at(e.col, e.row) != e.value.conj()) {
            return false;
        }
    }
    return true;
}

bool ExactMatrix::has_diagonal_support() const {
    if (repr_ == Repr::diagonal) {
        return true;
    }
    for (const auto& e : entries()) {
        if (e.row != e.col) {
            return false;
        }
    }
    return true;
}

bool ExactMatrix::is_generalized_permutation() const {
    std::vector<bool> row_used(rows_, false);
    std::vector<bool> col_used(cols_, false);
    for (const auto& e : entries()) {
        if (row_used[e.row] || col_used[e.col]) {
            return false;
        }
        row_used[e.row] = true;
        col_used[e.col] = true;
    }
    return true;
}

std::vector<GaussianRational> ExactMatrix::diagonal_values() const {
    const std::size_t n = std::min(rows_, cols_);
    if (repr_ == Repr::diagonal) {
        return store_;
    }
    std::vector<GaussianRational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(at(i, i));
    }
    return out;
}

GaussianRational ExactMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace requires a square matrix, got " +
                                    shape_string());
    }
    GaussianRational sum;
    for (const auto& v : diagonal_values()) {
        sum += v;
    }
    return sum;
}

ExactMatrix ExactMatrix::with_repr(Repr repr) const {
    if (repr == repr_) {
        return *this;
    }
    switch (repr) {
        case Repr::dense: {
            ExactMatrix m = zeros(rows_, cols_, Repr::dense);
            for (const auto& e : entries()) {
                m.dense_ref(e.row, e.col) = e.value;
            }
            return m;
        }
        case Repr::diagonal: {
            if (!is_square() || !has_diagonal_support()) {
                throw std::invalid_argument(
                    "matrix of shape " + shape_string() +
                    " does not fit the diagonal representation");
            }
            return diagonal_matrix(diagonal_values());
        }
        case Repr::unit_sparse:
            return from_entries(rows_, cols_, entries());
    }
    return *this;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    const auto ea = a.entries();
    const auto eb = b.entries();
    if (ea.size() != eb.size()) {
        return false;
    }
    for (std::size_t k = 0; k < ea.size(); ++k) {
        if (ea[k].row != eb[k].row || ea[k].col != eb[k].col ||
            ea[k].value != eb[k].value) {
            return false;
        }
    }
    return true;
}

void require_same_shape(const ExactMatrix& a, const ExactMatrix& b,
                        const char* context) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(context) + ": shape mismatch between " +
                                a.shape_string() + " and " + b.shape_string());
    }
}

void require_inner_match(const ExactMatrix& a, const ExactMatrix& b,
                         const char* context) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch(std::string(context) +
                                ": inner dimension mismatch between " +
                                a.shape_string() + " and " + b.shape_string());
    }
}

ExactMatrix add_scaled(const ExactMatrix& a, const GaussianRational& s,
                       const ExactMatrix& b) {
    require_same_shape(a, b, "add");
    if (s.is_zero() || b.is_zero()) {
        return a;
    }
    if (a.repr_ == Repr::diagonal && b.repr_ == Repr::diagonal) {
        ExactMatrix out = a;
        for (std::size_t i = 0; i < out.store_.size(); ++i) {
            out.store_[i] += s * b.store_[i];
        }
        return out;
    }
    if (a.repr_ != Repr::dense && b.repr_ != Repr::dense) {
        std::vector<MatrixEntry> merged = a.entries();
        for (const auto& e : b.entries()) {
            merged.push_back({e.row, e.col, s * e.value});
        }
        return ExactMatrix::from_entries(a.rows(), a.cols(), std::move(merged));
    }
    ExactMatrix out = a.with_repr(Repr::dense);
    for (const auto& e : b.entries()) {
        out.dense_ref(e.row, e.col) += s * e.value;
    }
    return out;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) {
    return add_scaled(a, GaussianRational(1), b);
}

ExactMatrix sub(const ExactMatrix& a, const ExactMatrix& b) {
    return add_scaled(a, GaussianRational(-1), b);
}

namespace {

ExactMatrix mul_structured(const ExactMatrix& a, const ExactMatrix& b) {
    // Both operands are diagonal or unit_sparse; accumulate exact products
    // grouped by output position.
    const auto ea = a.entries();
    const auto eb = b.entries();
    std::map<std::pair<std::size_t, std::size_t>, GaussianRational> acc;
    for (const auto& x : ea) {
        // eb is row-major sorted; find the block with row == x.col.
        auto it = std::lower_bound(eb.begin(), eb.end(), x.col,
                                   [](const MatrixEntry& e, std::size_t row) {
                                       return e.row < row;
                                   });
        for (; it != eb.end() && it->row == x.col; ++it) {
            acc[{x.row, it->col}] += x.value * it->value;
        }
    }
    std::vector<MatrixEntry> out;
    out.reserve(acc.size());
    for (auto& [pos, v] : acc) {
        out.push_back({pos.first, pos.second, std::move(v)});
    }
    return ExactMatrix::from_entries(a.rows(), b.cols(), std::move(out));
}

}  // namespace

ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b) {
    require_inner_match(a, b, "mul");
    if (a.repr_ == Repr::diagonal && b.repr_ == Repr::diagonal) {
        ExactMatrix out = ExactMatrix::zeros(a.rows(), b.cols(), Repr::diagonal);
        const std::size_t m =
            std::min({a.store_.size(), b.store_.size(), out.store_.size()});
        for (std::size_t i = 0; i < m; ++i) {
            out.store_[i] = a.store_[i] * b.store_[i];
        }
        return out;
    }
    if (a.repr_ == Repr::diagonal && b.repr_ == Repr::unit_sparse) {
        std::vector<MatrixEntry> entries;
        entries.reserve(b.sparse_.size());
        const std::size_t diag_len = a.store_.size();
        for (const auto& e : b.sparse_) {
            if (e.row < diag_len && !a.store_[e.row].is_zero()) {
                entries.push_back({e.row, e.col, a.store_[e.row] * e.value});
            }
        }
        return ExactMatrix::from_entries(a.rows(), b.cols(), std::move(entries));
    }
    if (a.repr_ == Repr::unit_sparse && b.repr_ == Repr::diagonal) {
        std::vector<MatrixEntry> entries;
        entries.reserve(a.sparse_.size());
        const std::size_t diag_len = b.store_.size();
        for (const auto& e : a.sparse_) {
            if (e.col < diag_len && !b.store_[e.col].is_zero()) {
                entries.push_back({e.row, e.col, e.value * b.store_[e.col]});
            }
        }
        return ExactMatrix::from_entries(a.rows(), b.cols(), std::move(entries));
    }
    if (a.repr_ != Repr::dense && b.repr_ != Repr::dense) {
        return mul_structured(a, b);
    }

    ExactMatrix out = ExactMatrix::zeros(a.rows(), b.cols(), Repr::dense);
    if (a.repr_ != Repr::dense) {
        for (const auto& e : a.entries()) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bv = b.at(e.col, j);
                if (!bv.is_zero()) {
                    out.dense_ref(e.row, j) += e.value * bv;
                }
            }
        }
        return out;
    }
    if (b.repr_ != Repr::dense) {
        for (const auto& e : b.entries()) {
            for (std::size_t i = 0; i < a.rows(); ++i) {
                const auto& av = a.at(i, e.row);
                if (!av.is_zero()) {
                    out.dense_ref(i, e.col) += av * e.value;
                }
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& av = a.store_[i * a.cols() + k];
            if (av.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bv = b.store_[k * b.cols() + j];
                if (!bv.is_zero()) {
                    out.dense_ref(i, j) += av * bv;
                }
            }
        }
    }
    return out;
}

ExactMatrix scalar_mul(const GaussianRational& s, const ExactMatrix& a) {
    if (s.is_zero()) {
        return ExactMatrix::zeros(a.rows(), a.cols(), a.repr());
    }
    ExactMatrix out = a;
    if (out.repr_ == Repr::unit_sparse) {
        for (auto& e : out.sparse_) {
            e.value *= s;
        }
    } else {
        for (auto& v : out.store_) {
            v *= s;
        }
    }
    return out;
}

namespace {

ExactMatrix flip_entries(const ExactMatrix& a, bool swap_indices, bool conjugate) {
    const std::size_t rows = swap_indices ? a.cols() : a.rows();
    const std::size_t cols = swap_indices ? a.rows() : a.cols();
    std::vector<MatrixEntry> entries = a.entries();
    for (auto& e : entries) {
        if (swap_indices) {
            std::swap(e.row, e.col);
        }
        if (conjugate) {
            e.value = e.value.conj();
        }
    }
    ExactMatrix out = ExactMatrix::from_entries(rows, cols, std::move(entries));
    if (a.repr() != Repr::unit_sparse) {
        // Preserve the input layout when it still fits.
        if (a.repr() == Repr::dense || out.is_square()) {
            out = out.with_repr(a.repr());
        }
    }
    return out;
}

}  // namespace

ExactMatrix adjoint(const ExactMatrix& a) { return flip_entries(a, true, true); }

ExactMatrix transpose(const ExactMatrix& a) { return flip_entries(a, true, false); }

ExactMatrix entrywise_conjugate(const ExactMatrix& a) {
    return flip_entries(a, false, true);
}

ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("hcat: row mismatch between " + a.shape_string() +
                                " and " + b.shape_string());
    }
    std::vector<MatrixEntry> entries = a.entries();
    for (const auto& e : b.entries()) {
        entries.push_back({e.row, e.col + a.cols(), e.value});
    }
    return ExactMatrix::from_entries(a.rows(), a.cols() + b.cols(),
                                     std::move(entries))
        .with_repr(Repr::dense);
}

ExactMatrix vcat(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionMismatch("vcat: column mismatch between " + a.shape_string() +
                                " and " + b.shape_string());
    }
    std::vector<MatrixEntry> entries = a.entries();
    for (const auto& e : b.entries()) {
        entries.push_back({e.row + a.rows(), e.col, e.value});
    }
    return ExactMatrix::from_entries(a.rows() + b.rows(), a.cols(),
                                     std::move(entries))
        .with_repr(Repr::dense);
}

}  // namespace fintower
