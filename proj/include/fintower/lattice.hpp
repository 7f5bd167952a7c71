#pragma once

#include "fintower/regular.hpp"
#include "fintower/spectral.hpp"

#include <variant>

namespace fintower {

struct NotSubequivalent : std::domain_error {
    using std::domain_error::domain_error;
};

enum class LatticeOp { meet, join };

/// Join: projection onto range(p) + range(q).  Meet: projection onto
/// range(p) n range(q), computed exactly through kernels.  Projections with
/// diagonal support use entrywise 0/1 logic instead.
Projection lattice_join(const Projection& p, const Projection& q);
Projection lattice_meet(const Projection& p, const Projection& q);
Projection lattice_op(const Projection& p, const Projection& q, LatticeOp op);

/// Order: p <= q iff q p = p, exact.
bool leq(const Projection& p, const Projection& q);

/// Subequivalence in a finite factor is decided by the trace: rank(p) <=
/// rank(q).  Same-dimension projections only.
bool subequivalent(const Projection& p, const Projection& q);

/// A partial isometry u with u u* = p and u* u <= q.  Projections with 0/1
/// diagonals produce an exact matrix-unit sum; the general case returns a
/// float witness built from orthonormal range bases.  Throws
/// NotSubequivalent when rank(p) > rank(q).
using PartialIsometry = std::variant<ExactMatrix, ComplexMatrix>;

PartialIsometry partial_isometry_between(const Projection& p, const Projection& q,
                                         double tol = kDefaultTol);

}  // namespace fintower
