#include <doctest.h>

#include "fintower/matrix.hpp"
#include "fintower/random.hpp"
#include "fintower/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>

using namespace fintower;

namespace {

GaussianRational q(long long n, long long d = 1) {
    return GaussianRational(make_rational(n, d));
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            best = std::max(best, std::abs(m(i, j)));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("to_complex maps entries faithfully") {
    const ExactMatrix m = ExactMatrix::from_rows(
        {{q(1, 2), GaussianRational(make_rational(0, 1), make_rational(-3, 4))},
         {q(0), q(2)}});
    const ComplexMatrix c = to_complex(m);
    REQUIRE(c.rows() == 2);
    REQUIRE(c.cols() == 2);
    CHECK(c(0, 0) == std::complex<double>(0.5, 0.0));
    CHECK(c(0, 1) == std::complex<double>(0.0, -0.75));
    CHECK(c(1, 0) == std::complex<double>(0.0, 0.0));
    CHECK(c(1, 1) == std::complex<double>(2.0, 0.0));
}

TEST_CASE("singular values of small fixed matrices") {
    SUBCASE("antidiagonal") {
        // [[0,2],[1,0]] has singular values {2, 1}.
        const ExactMatrix x =
            ExactMatrix::from_rows({{q(0), q(2)}, {q(1), q(0)}});
        const SingularProfile s = singular_values(x);
        REQUIRE(s.dim() == 2);
        CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("signed diagonal") {
        // Singular values are absolute values, sorted descending.
        const ExactMatrix x = ExactMatrix::diagonal_matrix({q(3), q(-4)});
        const SingularProfile s = singular_values(x);
        REQUIRE(s.dim() == 2);
        CHECK(s.values[0] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(s.values[1] == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("rectangular") {
        const ExactMatrix x =
            ExactMatrix::from_rows({{q(1), q(0), q(0)}, {q(0), q(2), q(0)}});
        const SingularProfile s = singular_values(x);
        REQUIRE(s.dim() == 2);
        CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("structured profiles agree with a dense SVD") {
    Sampler sampler(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + sampler.below(5);
        ExactMatrix x = sampler.matrix(n, n, 3, true);
        if (trial % 3 == 0) {
            // Exercise the structured fast paths as well.
            x = sampler.diagonal_projection(n).matrix();
        }
        const SingularProfile fast = singular_values(x);
        Eigen::JacobiSVD<ComplexMatrix> svd(to_complex(x));
        const auto& ref = svd.singularValues();
        REQUIRE(fast.dim() == static_cast<std::size_t>(ref.size()));
        for (std::size_t k = 0; k < fast.dim(); ++k) {
            CHECK(fast.values[k] ==
                  doctest::Approx(ref(static_cast<Eigen::Index>(k)))
                      .epsilon(1e-9));
        }
        // Descending order.
        CHECK(std::is_sorted(fast.values.rbegin(), fast.values.rend()));
    }
}

TEST_CASE("operator norm is the top singular value") {
    const ExactMatrix x = ExactMatrix::from_rows({{q(0), q(2)}, {q(1), q(0)}});
    CHECK(operator_norm(x) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(operator_norm(ExactMatrix::zeros(3, 3)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(operator_norm(ExactMatrix::identity(4)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("counting helpers honor the closed-side tie rule") {
    SingularProfile s;
    s.values = {2.0, 1.0 + 5e-10, 1.0, 0.5, 4e-10};

    // Values within tol of lambda sit on the closed side (0, lambda].
    CHECK(count_in_zero_lambda(s, 1.0, 1e-9) == 3);  // 1+5e-10, 1, 0.5
    CHECK(count_above(s, 1.0, 1e-9) == 1);           // only 2.0

    // Values within tol of zero are excluded from both intervals.
    CHECK(count_above(s, 0.1, 1e-9) == 4);
    CHECK(count_in_zero_lambda(s, 0.1, 1e-9) == 0);

    // With a tiny tolerance the tie breaks open.
    CHECK(count_above(s, 1.0, 1e-12) == 2);  // 2.0 and 1+5e-10
    CHECK(count_in_zero_lambda(s, 1.0, 1e-12) == 3);
}

TEST_CASE("polar decomposition of a fixed matrix") {
    // x = [[0,2],[1,0]]: modulus (x*x)^(1/2) = diag(1,2), isometry [[0,1],[1,0]].
    const ExactMatrix x = ExactMatrix::from_rows({{q(0), q(2)}, {q(1), q(0)}});
    const PolarPair p = polar(x);
    ComplexMatrix expect_v(2, 2), expect_m(2, 2);
    expect_v << 0, 1, 1, 0;
    expect_m << 1, 0, 0, 2;
    CHECK(max_abs(p.isometry - expect_v) < 1e-12);
    CHECK(max_abs(p.modulus - expect_m) < 1e-12);
}

TEST_CASE("polar factors recompose and are structurally correct") {
    Sampler sampler(555);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + sampler.below(4);
        const ExactMatrix x = sampler.matrix(n, n, 3, true);
        const PolarPair p = polar(x, 1e-9);
        const ComplexMatrix xf = to_complex(x);

        // Recomposition.
        CHECK(max_abs(p.isometry * p.modulus - xf) < 1e-8);

        // The modulus is hermitian positive semidefinite.
        CHECK(max_abs(p.modulus - p.modulus.adjoint()) < 1e-9);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p.modulus);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);

        // The isometry restricted to the range of |x| is inner-product
        // preserving: v* v acts as the identity on that range.
        const ComplexMatrix gram = p.isometry.adjoint() * p.isometry;
        CHECK(max_abs(gram * p.modulus - p.modulus) < 1e-8);
    }
}

TEST_CASE("hermitian spectral projections split the space") {
    ComplexMatrix h(3, 3);
    h.setZero();
    h(0, 0) = 3.0;
    h(1, 1) = 1.0;
    h(2, 2) = 0.25;
    const ComplexMatrix above =
        spectral_projection_hermitian(h, IntervalKind::above, 1.0);
    const ComplexMatrix below =
        spectral_projection_hermitian(h, IntervalKind::below_incl, 1.0);

    ComplexMatrix expect_above(3, 3), expect_below(3, 3);
    expect_above.setZero();
    expect_below.setZero();
    expect_above(0, 0) = 1.0;
    expect_below(1, 1) = 1.0;
    expect_below(2, 2) = 1.0;
    CHECK(max_abs(above - expect_above) < 1e-12);
    CHECK(max_abs(below - expect_below) < 1e-12);

    // Complementary on the support; here h is invertible so they sum to 1.
    CHECK(max_abs(above + below - ComplexMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("modulus projections use the closed-side tie rule") {
    // Eigenvalue within tol of the cut lands in (0, lambda].
    const ExactMatrix x = ExactMatrix::diagonal_matrix(
        {q(1), q(1) + q(1, 2000000000LL), q(2)});
    const ComplexMatrix below =
        spectral_projection_of_modulus(x, IntervalKind::below_incl, 1.0, 1e-9);
    const ComplexMatrix above =
        spectral_projection_of_modulus(x, IntervalKind::above, 1.0, 1e-9);
    CHECK(std::abs(below.trace().real() - 2.0) < 1e-9);
    CHECK(std::abs(above.trace().real() - 1.0) < 1e-9);

    // Values within tol of zero never contribute a projection direction.
    const ExactMatrix y =
        ExactMatrix::diagonal_matrix({q(1, 4000000000LL), q(1)});
    const ComplexMatrix yb =
        spectral_projection_of_modulus(y, IntervalKind::below_incl, 2.0, 1e-9);
    CHECK(std::abs(yb.trace().real() - 1.0) < 1e-9);
}

TEST_CASE("modulus projections are genuine projections") {
    Sampler sampler(808);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + sampler.below(4);
        const ExactMatrix x = sampler.matrix(n, n, 3, true);
        const SingularProfile s = singular_values(x);
        const double top = s.values.empty() ? 0.0 : s.values.front();
        if (top < 1e-6) {
            continue;
        }
        const double lambda = top / 2.0;
        const ComplexMatrix p = spectral_projection_of_modulus(
            x, IntervalKind::above, lambda, 1e-9);
        CHECK(max_abs(p * p - p) < 1e-8);
        CHECK(max_abs(p - p.adjoint()) < 1e-8);
        const std::size_t expected_rank = count_above(s, lambda, 1e-9);
        CHECK(std::abs(p.trace().real() -
                       static_cast<double>(expected_rank)) < 1e-7);
    }
}
