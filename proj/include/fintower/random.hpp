#pragma once

#include "fintower/matrix.hpp"
#include "fintower/regular.hpp"

#include <cstdint>
#include <random>

namespace fintower {

/// Seeded sampler for exact test data.  Every draw reduces raw mt19937_64
/// output with explicit modular arithmetic, so a seed produces the same
/// stream on every platform and standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi], inclusive.
    long integer(long lo, long hi);

    /// Numerator in [-height, height], denominator in [1, height].
    Rational rational(long height);
    GaussianRational scalar(long height, bool with_imaginary);

    ExactMatrix matrix(std::size_t rows, std::size_t cols, long height,
                       bool with_imaginary);
    /// Generic element with an interesting rank profile: half the draws are
    /// plain dense samples, half are rank-r products with random r.
    ExactMatrix ring_element(std::size_t n, long height, bool with_imaginary);
    /// Rejection-samples a dense matrix of full exact rank.
    ExactMatrix invertible(std::size_t n, long height, bool with_imaginary);
    /// b (c b)^(-1) c for random factors: an exact idempotent of random rank.
    ExactMatrix idempotent(std::size_t n, long height, bool with_imaginary);
    /// Orthogonal projection onto a random rational subspace.
    Projection projection(std::size_t n, long height, bool with_imaginary);
    /// Random 0/1 diagonal projection.
    Projection diagonal_projection(std::size_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace fintower
