#pragma once

#include "fintower/matrix.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fintower {

/// Shared numerical tolerance: spectral cutoffs, tie handling, and float
/// comparisons all use this single default.
inline constexpr double kDefaultTol = 1e-9;

/// Dense float work is capped at this edge length.
inline constexpr std::size_t kMaxFloatDim = 1024;

using ComplexMatrix = Eigen::MatrixXcd;

/// Float image of an exact matrix.
ComplexMatrix to_complex(const ExactMatrix& m);

/// Singular values in descending order; length min(rows, cols).
struct SingularProfile {
    std::vector<double> values;
    std::size_t dim() const { return values.size(); }
};

/// Exact-first: diagonal and generalized-permutation layouts read the
/// profile off their entries; everything else uses an SVD.
SingularProfile singular_values(const ExactMatrix& m);

double operator_norm(const ExactMatrix& m);

/// Entries equal to a cut point up to tol sit on the closed side: a value
/// within tol of lambda is counted as lambda, a value within tol of zero as
/// zero.
std::size_t count_above(const SingularProfile& s, double lambda, double tol);
std::size_t count_in_zero_lambda(const SingularProfile& s, double lambda,
                                 double tol);

/// Polar decomposition x = isometry * modulus with modulus = (x*x)^(1/2).
/// The isometry is a partial isometry supported on the co-range; singular
/// values at most tol count as zero.
struct PolarPair {
    ComplexMatrix isometry;
    ComplexMatrix modulus;
};

PolarPair polar(const ExactMatrix& x, double tol = kDefaultTol);
PolarPair polar_of(const ComplexMatrix& x, double tol = kDefaultTol);

/// Spectral interval selectors for projections.
enum class IntervalKind { above, below_incl };  // (lambda, inf), (0, lambda]

/// Spectral projection of a hermitian matrix onto the interval.
ComplexMatrix spectral_projection_hermitian(const ComplexMatrix& h,
                                            IntervalKind kind, double lambda,
                                            double tol = kDefaultTol);

/// Spectral projection of the modulus |x|, read from the singular value
/// decomposition of x.
ComplexMatrix spectral_projection_of_modulus(const ExactMatrix& x,
                                             IntervalKind kind, double lambda,
                                             double tol = kDefaultTol);

}  // namespace fintower
