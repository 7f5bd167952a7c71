#include <doctest.h>

#include "fintower/automorphism.hpp"
#include "fintower/matrix.hpp"
#include "fintower/metrics.hpp"
#include "fintower/random.hpp"
#include "fintower/tower.hpp"

#include <cmath>
#include <stdexcept>

using namespace fintower;

namespace {

GaussianRational q(long long n, long long d = 1) {
    return GaussianRational(make_rational(n, d));
}

Rational r(long long n, long long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("rank metric on fixed elements") {
    const TowerElement zero = zero_at(1);
    const TowerElement one = identity_at(1);
    const TowerElement e11 = matrix_unit({1, 1, 1});

    CHECK(rank_metric(one, zero) == r(1));
    CHECK(rank_metric_to_zero(e11) == r(1, 2));
    CHECK(rank_metric(one, one) == r(0));

    // The value only depends on the difference.
    CHECK(rank_metric(one, e11) == r(1, 2));

    // Promotion leaves the rank metric unchanged: rank doubles with the
    // dimension.
    CHECK(rank_metric_to_zero(promote(e11, 4)) == r(1, 2));
}

TEST_CASE("rank metric axioms on random elements") {
    Sampler sampler(4242);
    for (int trial = 0; trial < 20; ++trial) {
        const int level = 1 + static_cast<int>(sampler.below(3));
        const std::size_t n = level_dim(level);
        const TowerElement x(level, sampler.matrix(n, n, 3, true));
        const TowerElement y(level, sampler.matrix(n, n, 3, true));
        const TowerElement z(level, sampler.matrix(n, n, 3, true));

        CHECK(rank_metric(x, y) == rank_metric(y, x));
        CHECK((rank_metric(x, y) == r(0)) == (x == y));
        CHECK(rank_metric(x, z) <= rank_metric(x, y) + rank_metric(y, z));
        // Translation invariance.
        CHECK(rank_metric(x + z, y + z) == rank_metric(x, y));
    }
}

TEST_CASE("measure gauge of the scaled shift elements") {
    // At level n the scaled shift 2^-n v_n has 2^(n-1) singular values equal
    // to 2^-n; the gauge works out to exactly 2^-n.
    for (int n = 1; n <= 4; ++n) {
        const TowerElement v = build_v(n);
        const GaussianRational scale(r(1, static_cast<long long>(1) << n));
        const TowerElement scaled = scale * v;
        const double expect = std::ldexp(1.0, -n);
        CHECK(std::abs(measure_distance_to_zero(scaled) - expect) < 1e-12);

        // Unscaled, half the singular values are 1: the gauge is 1/2.
        CHECK(std::abs(measure_distance_to_zero(v) - 0.5) < 1e-12);
    }
}

TEST_CASE("measure gauge of simple diagonal elements") {
    // diag(3, 1/4): k = 0 gives 3; k = 1 gives max(1/4, 1/2) = 1/2;
    // k = 2 gives max(0, 1) = 1.  Minimum 1/2.
    const TowerElement d(1, ExactMatrix::diagonal_matrix({q(3), q(1, 4)}));
    CHECK(std::abs(measure_distance_to_zero(d) - 0.5) < 1e-12);

    CHECK(measure_distance_to_zero(zero_at(2)) == 0.0);

    // The two-argument form gauges the difference.
    const TowerElement a(1, ExactMatrix::diagonal_matrix({q(3), q(0)}));
    const TowerElement b(1, ExactMatrix::diagonal_matrix({q(0), q(-1, 4)}));
    CHECK(std::abs(measure_distance(a, b) - 0.5) < 1e-12);
    CHECK(measure_distance(a, a) == 0.0);
}

TEST_CASE("lp norms on fixed elements") {
    // The identity has every singular value 1, so every norm is 1.
    const TowerElement one = identity_at(2);
    for (const double p : {1.0, 2.0, 3.0, 4.0, 7.5}) {
        CHECK(lp_norm(one, p) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // diag(3, 4) at level 1: normalized trace averages over 2.
    const TowerElement d(1, ExactMatrix::diagonal_matrix({q(3), q(4)}));
    CHECK(lp_norm(d, 1.0) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(lp_norm(d, 2.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
    CHECK(lp_norm(d, 4.0) ==
          doctest::Approx(std::pow((81.0 + 256.0) / 2.0, 0.25)).epsilon(1e-12));

    // log norm averages log(1 + s_i).
    CHECK(log_norm(d) ==
          doctest::Approx((std::log(4.0) + std::log(5.0)) / 2.0).epsilon(1e-12));
    CHECK(log_norm(zero_at(1)) == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(lp_norm(d, 0.5), std::domain_error);
    CHECK_THROWS_AS(lp_norm(d, 0.0), std::domain_error);
}

TEST_CASE("norm chain and measure bound on random elements") {
    Sampler sampler(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int level = 1 + static_cast<int>(sampler.below(3));
        const std::size_t n = level_dim(level);
        const TowerElement x(level, sampler.matrix(n, n, 4, true));

        const double lg = log_norm(x);
        const double l1 = lp_norm(x, 1.0);
        const double l2 = lp_norm(x, 2.0);
        const double l4 = lp_norm(x, 4.0);
        const double gauge = measure_distance_to_zero(x);

        // log(1 + t) <= t gives the first step; Jensen gives the rest.
        CHECK(lg <= l1 + 1e-9);
        CHECK(l1 <= l2 + 1e-9);
        CHECK(l2 <= l4 + 1e-9);

        // Chebyshev-style bound for the gauge.
        CHECK(gauge <= std::sqrt(l1) + 1e-9);
    }
}

TEST_CASE("norm summary reports every gauge with exact rank") {
    const TowerElement e = matrix_unit({1, 1, 1});
    const auto rows = norm_summary(e);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].name == "log");
    CHECK(rows[1].name == "l1");
    CHECK(rows[2].name == "l2");
    CHECK(rows[3].name == "l4");
    CHECK(rows[4].name == "measure");
    CHECK(rows[5].name == "rank");

    CHECK(rows[0].value == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));
    CHECK(rows[1].value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rows[2].value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(rows[4].value == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(rows[5].exact.has_value());
    CHECK(*rows[5].exact == r(1, 2));
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        CHECK_FALSE(rows[k].exact.has_value());
    }
}
