#pragma once

#include "fintower/regular.hpp"
#include "fintower/spectral.hpp"

namespace fintower {

/// Optional pre-composition of the conjugation map: adjoint applies
/// entrywise complex conjugation (the adjoint of the transpose), modeling a
/// real-linear rather than complex-linear base map.  Products are still
/// preserved.
enum class Twist { none, adjoint };

/// Ring isomorphism x -> a psi(x) a^(-1) with exact inverse.
class ConjugationIso {
public:
    /// Throws SingularMatrixError("conjugator not invertible") when a has
    /// no exact inverse.
    static ConjugationIso make(ExactMatrix a, Twist twist = Twist::none);

    const ExactMatrix& conjugator() const { return a_; }
    const ExactMatrix& conjugator_inverse() const { return a_inv_; }
    Twist twist() const { return twist_; }
    /// log2 of the dimension when it is a power of two, otherwise -1.
    int level() const { return level_; }

    ExactMatrix apply(const ExactMatrix& x) const;

private:
    ConjugationIso(ExactMatrix a, ExactMatrix a_inv, Twist twist, int level)
        : a_(std::move(a)), a_inv_(std::move(a_inv)), twist_(twist),
          level_(level) {}

    ExactMatrix a_;
    ExactMatrix a_inv_;
    Twist twist_;
    int level_;
};

/// One-shot conjugation a x a^(-1) (after the optional twist).
ExactMatrix conjugation_iso(const ExactMatrix& a, const ExactMatrix& x,
                            Twist twist = Twist::none);

/// The induced projection-lattice map p -> left support of the image of p.
/// Exact; order- and lattice-structure preserving.
Projection lattice_image(const ConjugationIso& iso, const Projection& p);

/// Normalization of a conjugator: with a = v|a| the polar decomposition,
/// positive_part = v |a| v* is positive invertible and unitary_part = v is
/// unitary.  Then a = positive_part * unitary_part, so conjugation by a is
/// conjugation by unitary_part followed by conjugation by positive_part.
struct PolarSplit {
    ComplexMatrix positive_part;
    ComplexMatrix unitary_part;
};

PolarSplit polar_split(const ExactMatrix& a, double tol = kDefaultTol);

/// x e_{(0,lambda]}(|x|): the spectral cutoff of x at lambda.  The removed
/// part has rank #{singular values above lambda}, so the rank distance to x
/// is bounded by the co-trace of the cutoff projection.
ComplexMatrix cutoff_approximation(const ExactMatrix& x, double lambda,
                                   double tol = kDefaultTol);

}  // namespace fintower
