#pragma once

#include "fintower/matrix.hpp"
#include "fintower/matrix_io.hpp"

#include <stdexcept>

namespace fintower {

/// Dense exact arithmetic is capped at 64 x 64; structured layouts carry the
/// tower up to 16384 x 16384.
inline constexpr int kMaxDenseLevel = 6;
inline constexpr int kMaxStructuredLevel = 14;

struct LevelRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// 2^level, after validating the level against the structured cap.
std::size_t level_dim(int level);

/// An element of level n of the matrix-unit tower: an exact 2^n x 2^n
/// matrix tagged with its level.  Binary operations promote to the larger
/// level first; promotion embeds x as x (x) 1_2 per level step, which leaves
/// the normalized trace unchanged.
class TowerElement {
public:
    TowerElement(int level, ExactMatrix matrix);

    int level() const { return level_; }
    const ExactMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }

    friend bool operator==(const TowerElement& a, const TowerElement& b) {
        return a.level_ == b.level_ && a.matrix_ == b.matrix_;
    }
    friend bool operator!=(const TowerElement& a, const TowerElement& b) {
        return !(a == b);
    }

private:
    int level_;
    ExactMatrix matrix_;
};

/// 1-based coordinates of a matrix unit e_ij at a tower level.
struct MatrixUnitIndex {
    int level = 0;
    std::size_t i = 1;
    std::size_t j = 1;
};

/// The matrix unit e_ij: a single 1 at (i, j); unit_sparse.
TowerElement matrix_unit(const MatrixUnitIndex& index);

TowerElement identity_at(int level);
TowerElement zero_at(int level);

/// Embeds into a higher level: each level step replaces the unit e_ij by
/// e_{2i-1,2j-1} + e_{2i,2j}, so k steps send entry (i, j) to the 2^k
/// entries (2^k i + t, 2^k j + t), t < 2^k (0-based).  Representation is
/// preserved.
TowerElement promote(const TowerElement& x, int target_level);

/// trace / 2^level, exact.  Promotion-invariant.
GaussianRational trace_normalized(const TowerElement& x);

TowerElement operator+(const TowerElement& a, const TowerElement& b);
TowerElement operator-(const TowerElement& a, const TowerElement& b);
TowerElement operator*(const TowerElement& a, const TowerElement& b);
TowerElement operator*(const GaussianRational& s, const TowerElement& a);
TowerElement adjoint(const TowerElement& a);

/// Interprets a parsed document as a tower element; the level is taken from
/// the document or inferred from the shape, which must be square with a
/// power-of-two edge.
TowerElement to_tower_element(const MatrixDocument& doc);

}  // namespace fintower
