#include "fintower/random.hpp"

namespace fintower {

std::uint64_t Sampler::below(std::uint64_t bound) {
    return engine_() % bound;
}

long Sampler::integer(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Sampler::rational(long height) {
    return make_rational(Integer(integer(-height, height)),
                         Integer(integer(1, height)));
}

GaussianRational Sampler::scalar(long height, bool with_imaginary) {
    Rational re = rational(height);
    if (!with_imaginary) {
        return GaussianRational(std::move(re));
    }
    return GaussianRational(std::move(re), rational(height));
}

ExactMatrix Sampler::matrix(std::size_t rows, std::size_t cols, long height,
                            bool with_imaginary) {
    std::vector<std::vector<GaussianRational>> grid(rows);
    for (auto& row : grid) {
        row.reserve(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            row.push_back(scalar(height, with_imaginary));
        }
    }
    return ExactMatrix::from_rows(std::move(grid));
}

ExactMatrix Sampler::ring_element(std::size_t n, long height,
                                  bool with_imaginary) {
    if (below(2) == 0) {
        return matrix(n, n, height, with_imaginary);
    }
    const std::size_t r = below(n + 1);
    if (r == 0) {
        return ExactMatrix::zeros(n, n, Repr::dense);
    }
    return mul(matrix(n, r, height, with_imaginary),
               matrix(r, n, height, with_imaginary));
}

ExactMatrix Sampler::invertible(std::size_t n, long height,
                                bool with_imaginary) {
    while (true) {
        ExactMatrix candidate = matrix(n, n, height, with_imaginary);
        if (rank_exact(candidate) == n) {
            return candidate;
        }
    }
}

ExactMatrix Sampler::idempotent(std::size_t n, long height,
                                bool with_imaginary) {
    const std::size_t r = below(n + 1);
    if (r == 0) {
        return ExactMatrix::zeros(n, n, Repr::dense);
    }
    while (true) {
        const ExactMatrix b = matrix(n, r, height, with_imaginary);
        const ExactMatrix c = matrix(r, n, height, with_imaginary);
        const ExactMatrix inner = mul(c, b);
        if (rank_exact(inner) != r) {
            continue;
        }
        return mul(mul(b, inverse(inner)), c);
    }
}

Projection Sampler::projection(std::size_t n, long height,
                               bool with_imaginary) {
    const std::size_t r = below(n + 1);
    if (r == 0) {
        return Projection::trusted(ExactMatrix::zeros(n, n, Repr::dense));
    }
    const ExactMatrix basis = matrix(n, r, height, with_imaginary);
    return Projection::checked(column_space_projection(basis));
}

Projection Sampler::diagonal_projection(std::size_t n) {
    std::vector<GaussianRational> diag(n);
    for (auto& d : diag) {
        d = GaussianRational(static_cast<int>(below(2)));
    }
    return Projection::trusted(ExactMatrix::diagonal_matrix(std::move(diag)));
}

}  // namespace fintower
