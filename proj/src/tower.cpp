#include "fintower/tower.hpp"

#include <utility>

namespace fintower {

std::size_t level_dim(int level) {
    if (level < 0 || level > kMaxStructuredLevel) {
        throw LevelRangeError("level " + std::to_string(level) +
                              " outside the supported range [0, " +
                              std::to_string(kMaxStructuredLevel) + "]");
    }
    return std::size_t{1} << static_cast<unsigned>(level);
}

TowerElement::TowerElement(int level, ExactMatrix matrix)
    : level_(level), matrix_(std::move(matrix)) {
    const std::size_t dim = level_dim(level);
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw DimensionMismatch("level " + std::to_string(level) +
                                " implies shape " + std::to_string(dim) + "x" +
                                std::to_string(dim) + ", got " +
                                matrix_.shape_string());
    }
    if (matrix_.repr() == Repr::dense && level > kMaxDenseLevel) {
        throw LevelRangeError("dense representation is capped at level " +
                              std::to_string(kMaxDenseLevel) + ", got level " +
                              std::to_string(level));
    }
}

TowerElement matrix_unit(const MatrixUnitIndex& index) {
    const std::size_t dim = level_dim(index.level);
    if (index.i < 1 || index.i > dim || index.j < 1 || index.j > dim) {
        throw std::out_of_range("matrix unit (" + std::to_string(index.i) + ", " +
                                std::to_string(index.j) +
                                ") outside level " + std::to_string(index.level) +
                                " (valid range 1.." + std::to_string(dim) + ")");
    }
    return TowerElement(
        index.level,
        ExactMatrix::from_entries(dim, dim,
                                  {{index.i - 1, index.j - 1, GaussianRational(1)}}));
}

TowerElement identity_at(int level) {
    return TowerElement(level, ExactMatrix::identity(level_dim(level)));
}

TowerElement zero_at(int level) {
    return TowerElement(level,
                        ExactMatrix::zeros(level_dim(level), level_dim(level),
                                           Repr::unit_sparse));
}

TowerElement promote(const TowerElement& x, int target_level) {
    if (target_level == x.level()) {
        return x;
    }
    if (target_level < x.level()) {
        throw LevelRangeError("cannot promote level " + std::to_string(x.level()) +
                              " down to level " + std::to_string(target_level));
    }
    const std::size_t dim = level_dim(target_level);
    const std::size_t block = std::size_t{1}
                              << static_cast<unsigned>(target_level - x.level());
    if (x.matrix().repr() == Repr::diagonal) {
        const auto src = x.matrix().diagonal_values();
        std::vector<GaussianRational> diag(dim);
        for (std::size_t i = 0; i < src.size(); ++i) {
            for (std::size_t t = 0; t < block; ++t) {
                diag[i * block + t] = src[i];
            }
        }
        return TowerElement(target_level,
                            ExactMatrix::diagonal_matrix(std::move(diag)));
    }
    std::vector<MatrixEntry> entries;
    entries.reserve(x.matrix().nonzero_count() * block);
    for (const auto& e : x.matrix().entries()) {
        for (std::size_t t = 0; t < block; ++t) {
            entries.push_back({e.row * block + t, e.col * block + t, e.value});
        }
    }
    ExactMatrix lifted = ExactMatrix::from_entries(dim, dim, std::move(entries));
    if (x.matrix().repr() == Repr::dense) {
        lifted = lifted.with_repr(Repr::dense);
    }
    return TowerElement(target_level, std::move(lifted));
}

GaussianRational trace_normalized(const TowerElement& x) {
    return x.matrix().trace() * GaussianRational(pow2_rational(-x.level()));
}

namespace {

std::pair<TowerElement, TowerElement> at_common_level(const TowerElement& a,
                                                      const TowerElement& b) {
    const int level = std::max(a.level(), b.level());
    return {promote(a, level), promote(b, level)};
}

}  // namespace

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
    auto [x, y] = at_common_level(a, b);
    return TowerElement(x.level(), x.matrix() + y.matrix());
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) {
    auto [x, y] = at_common_level(a, b);
    return TowerElement(x.level(), x.matrix() - y.matrix());
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    auto [x, y] = at_common_level(a, b);
    return TowerElement(x.level(), x.matrix() * y.matrix());
}

TowerElement operator*(const GaussianRational& s, const TowerElement& a) {
    return TowerElement(a.level(), scalar_mul(s, a.matrix()));
}

TowerElement adjoint(const TowerElement& a) {
    return TowerElement(a.level(), adjoint(a.matrix()));
}

TowerElement to_tower_element(const MatrixDocument& doc) {
    if (doc.level) {
        return TowerElement(*doc.level, doc.matrix);
    }
    const std::size_t n = doc.matrix.rows();
    if (!doc.matrix.is_square() || n == 0 || (n & (n - 1)) != 0) {
        throw DimensionMismatch("matrix of shape " + doc.matrix.shape_string() +
                                " is not a tower element (need a square "
                                "power-of-two shape)");
    }
    int level = 0;
    while ((std::size_t{1} << static_cast<unsigned>(level)) < n) {
        ++level;
    }
    return TowerElement(level, doc.matrix);
}

}  // namespace fintower
