#include "fintower/lattice.hpp"

#include <utility>

namespace fintower {

namespace {

bool both_diagonal(const Projection& p, const Projection& q) {
    return p.matrix().has_diagonal_support() && q.matrix().has_diagonal_support();
}

// Projections with diagonal support have 0/1 diagonals, so the lattice
// operations reduce to entrywise boolean logic.
Projection diagonal_combine(const Projection& p, const Projection& q,
                            LatticeOp op) {
    auto dp = p.matrix().diagonal_values();
    const auto dq = q.matrix().diagonal_values();
    for (std::size_t i = 0; i < dp.size(); ++i) {
        dp[i] = op == LatticeOp::join ? dp[i] + dq[i] - dp[i] * dq[i]
                                      : dp[i] * dq[i];
    }
    return Projection::trusted(ExactMatrix::diagonal_matrix(std::move(dp)));
}

}  // namespace

Projection lattice_join(const Projection& p, const Projection& q) {
    require_same_shape(p.matrix(), q.matrix(), "join");
    if (both_diagonal(p, q)) {
        return diagonal_combine(p, q, LatticeOp::join);
    }
    return Projection::checked(
        column_space_projection(hcat(p.matrix(), q.matrix())));
}

Projection lattice_meet(const Projection& p, const Projection& q) {
    require_same_shape(p.matrix(), q.matrix(), "meet");
    if (both_diagonal(p, q)) {
        return diagonal_combine(p, q, LatticeOp::meet);
    }
    // range(p) n range(q) = ker(1 - p) n ker(1 - q), read off as the kernel
    // of the stacked complements.
    const ExactMatrix one = ExactMatrix::identity(p.dim());
    const ExactMatrix stacked = vcat(one - p.matrix(), one - q.matrix());
    const ExactMatrix basis = kernel_basis(stacked);
    if (basis.cols() == 0) {
        return Projection::trusted(
            ExactMatrix::zeros(p.dim(), p.dim(), Repr::dense));
    }
    return Projection::checked(column_space_projection(basis));
}

Projection lattice_op(const Projection& p, const Projection& q, LatticeOp op) {
    return op == LatticeOp::join ? lattice_join(p, q) : lattice_meet(p, q);
}

bool leq(const Projection& p, const Projection& q) {
    require_same_shape(p.matrix(), q.matrix(), "leq");
    return mul(q.matrix(), p.matrix()) == p.matrix();
}

bool subequivalent(const Projection& p, const Projection& q) {
    require_same_shape(p.matrix(), q.matrix(), "subequivalent");
    return p.rank() <= q.rank();
}

PartialIsometry partial_isometry_between(const Projection& p, const Projection& q,
                                         double tol) {
    require_same_shape(p.matrix(), q.matrix(), "partial isometry");
    const std::size_t rp = p.rank();
    const std::size_t rq = q.rank();
    if (rp > rq) {
        throw NotSubequivalent("not subequivalent: rank " + std::to_string(rp) +
                               " projection cannot embed into rank " +
                               std::to_string(rq) + " projection");
    }
    if (both_diagonal(p, q)) {
        // u = sum of e_{i_t, j_t} over the t-th 1-positions of p and q.
        std::vector<std::size_t> pi;
        std::vector<std::size_t> qi;
        const auto dp = p.matrix().diagonal_values();
        const auto dq = q.matrix().diagonal_values();
        for (std::size_t i = 0; i < dp.size(); ++i) {
            if (!dp[i].is_zero()) {
                pi.push_back(i);
            }
            if (!dq[i].is_zero()) {
                qi.push_back(i);
            }
        }
        std::vector<MatrixEntry> entries;
        entries.reserve(pi.size());
        for (std::size_t t = 0; t < pi.size(); ++t) {
            entries.push_back({pi[t], qi[t], GaussianRational(1)});
        }
        return ExactMatrix::from_entries(p.dim(), p.dim(), std::move(entries));
    }

    (void)tol;  // the 0/1 spectrum of a projection needs no tuning
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> ep(to_complex(p.matrix()));
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eq(to_complex(q.matrix()));
    const auto range_basis = [](const Eigen::SelfAdjointEigenSolver<ComplexMatrix>& e,
                                std::size_t rank) {
        ComplexMatrix basis(e.eigenvectors().rows(),
                            static_cast<Eigen::Index>(rank));
        Eigen::Index out = 0;
        for (Eigen::Index k = 0; k < e.eigenvalues().size(); ++k) {
            if (e.eigenvalues()(k) > 0.5 && out < basis.cols()) {
                basis.col(out++) = e.eigenvectors().col(k);
            }
        }
        if (out != basis.cols()) {
            throw std::runtime_error("projection rank disagrees with spectrum");
        }
        return basis;
    };
    const ComplexMatrix up = range_basis(ep, rp);
    const ComplexMatrix uq = range_basis(eq, rq).leftCols(static_cast<Eigen::Index>(rp));
    return ComplexMatrix(up * uq.adjoint());
}

}  // namespace fintower
