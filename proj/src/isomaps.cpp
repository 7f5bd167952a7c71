#include "fintower/isomaps.hpp"

#include <cmath>
#include <utility>

namespace fintower {

namespace {

int exact_log2(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        return -1;
    }
    int level = 0;
    while ((std::size_t{1} << static_cast<unsigned>(level)) < n) {
        ++level;
    }
    return level;
}

}  // namespace

ConjugationIso ConjugationIso::make(ExactMatrix a, Twist twist) {
    if (!a.is_square()) {
        throw DimensionMismatch("conjugator must be square, got " +
                                a.shape_string());
    }
    ExactMatrix a_inv;
    try {
        a_inv = inverse(a);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("conjugator not invertible");
    }
    const int level = exact_log2(a.rows());
    return ConjugationIso(std::move(a), std::move(a_inv), twist, level);
}

ExactMatrix ConjugationIso::apply(const ExactMatrix& x) const {
    require_inner_match(a_, x, "conjugation");
    require_inner_match(x, a_inv_, "conjugation");
    const ExactMatrix base = twist_ == Twist::adjoint ? entrywise_conjugate(x) : x;
    return mul(mul(a_, base), a_inv_);
}

ExactMatrix conjugation_iso(const ExactMatrix& a, const ExactMatrix& x,
                            Twist twist) {
    return ConjugationIso::make(a, twist).apply(x);
}

Projection lattice_image(const ConjugationIso& iso, const Projection& p) {
    return left_support(iso.apply(p.matrix()));
}

PolarSplit polar_split(const ExactMatrix& a, double tol) {
    if (!a.is_square()) {
        throw DimensionMismatch("conjugator must be square, got " +
                                a.shape_string());
    }
    if (rank_exact(a) != a.rows()) {
        throw SingularMatrixError("conjugator not invertible");
    }
    const PolarPair pair = polar(a, tol);
    PolarSplit out;
    out.unitary_part = pair.isometry;
    out.positive_part = pair.isometry * pair.modulus * pair.isometry.adjoint();
    return out;
}

ComplexMatrix cutoff_approximation(const ExactMatrix& x, double lambda,
                                   double tol) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("cutoff level must be positive, got " +
                                    std::to_string(lambda));
    }
    const ComplexMatrix projection =
        spectral_projection_of_modulus(x, IntervalKind::below_incl, lambda, tol);
    return to_complex(x) * projection;
}

}  // namespace fintower
