#include <doctest.h>

#include "fintower/matrix.hpp"
#include "fintower/matrix_io.hpp"
#include "fintower/random.hpp"
#include "fintower/tower.hpp"

#include <cstddef>
#include <stdexcept>

using namespace fintower;

namespace {

GaussianRational q(long long n, long long d = 1) {
    return GaussianRational(make_rational(n, d));
}

}  // namespace

TEST_CASE("level_dim doubles per level and validates the range") {
    CHECK(level_dim(0) == 1);
    CHECK(level_dim(1) == 2);
    CHECK(level_dim(6) == 64);
    CHECK(level_dim(14) == 16384);
    CHECK_THROWS_AS(level_dim(-1), LevelRangeError);
    CHECK_THROWS_AS(level_dim(15), LevelRangeError);
}

TEST_CASE("tower elements check their shape against the level") {
    CHECK_NOTHROW(TowerElement(2, ExactMatrix::identity(4)));
    CHECK_THROWS_AS(TowerElement(2, ExactMatrix::identity(8)),
                    DimensionMismatch);
    CHECK_THROWS_AS(TowerElement(1, ExactMatrix::zeros(2, 4)),
                    DimensionMismatch);
}

TEST_CASE("matrix units are single entries with validated coordinates") {
    const TowerElement e = matrix_unit({2, 1, 3});
    CHECK(e.level() == 2);
    CHECK(e.dim() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const GaussianRational expect = (i == 0 && j == 2) ? q(1) : q(0);
            CHECK(e.matrix().at(i, j) == expect);
        }
    }
    CHECK(e.matrix().repr() == Repr::unit_sparse);

    CHECK_THROWS_AS(matrix_unit({2, 0, 1}), std::out_of_range);
    CHECK_THROWS_AS(matrix_unit({2, 1, 5}), std::out_of_range);
    CHECK_THROWS_AS(matrix_unit({15, 1, 1}), LevelRangeError);
}

TEST_CASE("promotion doubles each matrix unit") {
    // e_12 at level 1 promotes to e_13 + e_24 at level 2 (1-based), i.e.
    // 0-based entries (0,2) and (1,3).
    const TowerElement e12 = matrix_unit({1, 1, 2});
    const TowerElement up = promote(e12, 2);
    CHECK(up.level() == 2);
    ExactMatrix expect =
        ExactMatrix::from_entries(4, 4, {{0, 2, q(1)}, {1, 3, q(1)}});
    CHECK(up.matrix() == expect);

    // Two steps: entry (i, j) lands at (4i + t, 4j + t) for t = 0..3.
    const TowerElement up2 = promote(e12, 3);
    ExactMatrix expect2 = ExactMatrix::from_entries(
        8, 8, {{0, 4, q(1)}, {1, 5, q(1)}, {2, 6, q(1)}, {3, 7, q(1)}});
    CHECK(up2.matrix() == expect2);
}

TEST_CASE("promotion is a unital *-homomorphism") {
    Sampler sampler(31);
    for (int trial = 0; trial < 6; ++trial) {
        const int level = 1 + static_cast<int>(sampler.below(2));
        const int target = level + 1 + static_cast<int>(sampler.below(2));
        const std::size_t n = level_dim(level);
        const TowerElement x(level, sampler.matrix(n, n, 3, true));
        const TowerElement y(level, sampler.matrix(n, n, 3, true));

        CHECK(promote(x + y, target) == promote(x, target) + promote(y, target));
        CHECK(promote(x * y, target) == promote(x, target) * promote(y, target));
        CHECK(promote(adjoint(x), target) == adjoint(promote(x, target)));
        CHECK(promote(identity_at(level), target) == identity_at(target));
    }
}

TEST_CASE("promotion preserves representation and trace") {
    const TowerElement d(1, ExactMatrix::diagonal_matrix({q(2), q(-1, 3)}));
    const TowerElement up = promote(d, 4);
    CHECK(up.matrix().repr() == Repr::diagonal);
    CHECK(trace_normalized(d) == trace_normalized(up));
    CHECK(trace_normalized(d) == q(5, 6));  // (2 - 1/3) / 2

    // trace_normalized divides by the level dimension.
    CHECK(trace_normalized(identity_at(3)) == q(1));
    CHECK(trace_normalized(matrix_unit({2, 1, 1})) == q(1, 4));
}

TEST_CASE("promotion only goes upward") {
    const TowerElement x = identity_at(3);
    CHECK(promote(x, 3) == x);
    CHECK_THROWS_AS(promote(x, 2), LevelRangeError);
    CHECK_THROWS_AS(promote(x, 15), LevelRangeError);
}

TEST_CASE("binary operations meet at the larger level") {
    const TowerElement a = matrix_unit({1, 1, 2});
    const TowerElement b = matrix_unit({2, 1, 1});
    const TowerElement sum = a + b;
    CHECK(sum.level() == 2);
    CHECK(sum.matrix().at(0, 0) == q(1));
    CHECK(sum.matrix().at(0, 2) == q(1));
    CHECK(sum.matrix().at(1, 3) == q(1));

    // Product: promote(e_12) * e_11 = (e_13 + e_24) e_11 = 0.
    const TowerElement prod = a * b;
    CHECK(prod.level() == 2);
    CHECK(prod.matrix() == ExactMatrix::zeros(4, 4));

    // Scalar action and adjoint stay at the element's level.
    const TowerElement scaled = q(3, 2) * a;
    CHECK(scaled.level() == 1);
    CHECK(scaled.matrix().at(0, 1) == q(3, 2));
    CHECK(adjoint(a).matrix().at(1, 0) == q(1));
}

TEST_CASE("documents convert to tower elements") {
    SUBCASE("level taken from the document") {
        MatrixDocument doc;
        doc.level = 2;
        doc.matrix = ExactMatrix::identity(4);
        const TowerElement t = to_tower_element(doc);
        CHECK(t.level() == 2);
        CHECK(t.matrix() == ExactMatrix::identity(4));
    }
    SUBCASE("level inferred from a power-of-two shape") {
        MatrixDocument doc;
        doc.matrix = ExactMatrix::identity(8);
        CHECK(to_tower_element(doc).level() == 3);

        MatrixDocument one;
        one.matrix = ExactMatrix::identity(1);
        CHECK(to_tower_element(one).level() == 0);
    }
    SUBCASE("non-tower shapes are rejected") {
        MatrixDocument bad;
        bad.matrix = ExactMatrix::identity(3);
        CHECK_THROWS_AS(to_tower_element(bad), DimensionMismatch);

        MatrixDocument rect;
        rect.matrix = ExactMatrix::zeros(2, 4);
        CHECK_THROWS_AS(to_tower_element(rect), DimensionMismatch);
    }
}

TEST_CASE("dense arithmetic at high levels is rejected by the cap") {
    // Dense storage stops at level 6; structured layouts continue beyond.
    const TowerElement big = identity_at(12);
    CHECK(big.dim() == 4096);
    CHECK_NOTHROW(big * big);

    // A dense layout above the dense level cap is refused even when the raw
    // entry count would fit.
    CHECK_THROWS_AS(TowerElement(7, ExactMatrix::zeros(128, 128, Repr::dense)),
                    LevelRangeError);
}
