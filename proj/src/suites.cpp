#include "fintower/suites.hpp"

#include "fintower/isomaps.hpp"
#include "fintower/lattice.hpp"
#include "fintower/metrics.hpp"
#include "fintower/random.hpp"

#include <cmath>
#include <utility>

namespace fintower {

namespace {

constexpr int kMaxWitnesses = 5;

void record(SuiteResult& result, int case_index, const std::string& what) {
    ++result.failures;
    if (result.witnesses.size() < kMaxWitnesses) {
        result.witnesses.push_back("case " + std::to_string(case_index) + ": " +
                                   what);
    }
}

int random_level(Sampler& s, int max_level) {
    return 1 + static_cast<int>(s.below(static_cast<std::uint64_t>(max_level)));
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& m) {
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
    return eig.eigenvalues().minCoeff();
}

// Conjugators for float paths are rejection-sampled to condition number at
// most 1e3 so float tolerances stay meaningful.
ExactMatrix well_conditioned_invertible(Sampler& s, std::size_t n, long height,
                                        bool with_imaginary) {
    while (true) {
        ExactMatrix a = s.invertible(n, height, with_imaginary);
        const SingularProfile profile = singular_values(a);
        if (profile.values.back() > 0 &&
            profile.values.front() / profile.values.back() <= 1e3) {
            return a;
        }
    }
}

}  // namespace

SuiteResult run_ring_axiom_suite(std::uint64_t seed, int cases, int max_level,
                                 long height) {
    Sampler s(seed);
    SuiteResult result{"ring-axioms", 0, 0, {}};
    for (int t = 0; t < cases; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const ExactMatrix x = s.ring_element(n, height, cx);
        const ExactMatrix ix = partial_inverse(x);
        const ExactMatrix left = mul(x, ix);
        const ExactMatrix right = mul(ix, x);

        std::string err;
        if (!is_projection_matrix(left) || !is_projection_matrix(right)) {
            err = "support of the element is not an exact projection";
        } else if (mul(left, x) != x) {
            err = "left support does not fix the element";
        } else if (mul(x, right) != x) {
            err = "right support does not fix the element";
        } else if (mul(mul(x, ix), x) != x) {
            err = "x i(x) x differs from x";
        } else if (mul(ix, left) != ix) {
            err = "i(x) l(x) differs from i(x)";
        } else if (mul(right, ix) != ix) {
            err = "r(x) i(x) differs from i(x)";
        } else if (Projection::trusted(left).rank() != rank_exact(x) ||
                   Projection::trusted(right).rank() != rank_exact(x)) {
            // Both supports are verified projections, so their rank is their
            // trace.
            err = "support rank differs from element rank";
        }

        if (err.empty()) {
            const ExactMatrix e = s.idempotent(n, height, cx);
            const Projection le = left_support(e);
            if (mul(le.matrix(), e) != e || mul(e, le.matrix()) != le.matrix()) {
                err = "idempotent support equations fail";
            } else {
                const Projection probe = s.projection(n, height, cx);
                const bool fixes = mul(probe.matrix(), e) == e &&
                                   mul(e, probe.matrix()) == probe.matrix();
                if (fixes && probe.matrix() != le.matrix()) {
                    err = "a second projection satisfies the support equations";
                }
            }
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

SuiteResult run_rank_metric_suite(std::uint64_t seed, int triples, int max_level,
                                  long height) {
    Sampler s(seed);
    SuiteResult result{"rank-metric", 0, 0, {}};
    for (int t = 0; t < triples; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const TowerElement x(level, s.ring_element(n, height, cx));
        const TowerElement y(level, s.ring_element(n, height, cx));
        const TowerElement z(level, s.ring_element(n, height, cx));
        const Rational dxy = rank_metric(x, y);
        const Rational dyx = rank_metric(y, x);
        const Rational dxz = rank_metric(x, z);
        const Rational dyz = rank_metric(y, z);

        std::string err;
        if (dxy != dyx) {
            err = "symmetry fails";
        } else if (dxz > dxy + dyz) {
            err = "triangle inequality fails";
        } else if (rank_metric(x, x) != 0) {
            err = "distance of an element to itself is nonzero";
        } else if (x != y && dxy <= 0) {
            err = "distinct elements at distance zero";
        } else {
            const Integer dim = Integer(1) << static_cast<unsigned>(level);
            if (dim % denominator(dxy) != 0) {
                err = "value " + format_rational(dxy) +
                      " is not a dyadic multiple at this level";
            }
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

SuiteResult run_lattice_suite(std::uint64_t seed, int pairs, int max_level,
                              long height, double tol) {
    Sampler s(seed);
    SuiteResult result{"lattice", 0, 0, {}};
    for (int t = 0; t < pairs; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const auto draw = [&]() {
            return s.below(3) == 0 ? s.diagonal_projection(n)
                                   : s.projection(n, height, cx);
        };
        const Projection p = draw();
        const Projection q = draw();
        const Projection r = draw();

        const Projection join_pq = lattice_join(p, q);
        const Projection meet_pq = lattice_meet(p, q);

        std::string err;
        if (join_pq != lattice_join(q, p) || meet_pq != lattice_meet(q, p)) {
            err = "commutativity fails";
        } else if (lattice_join(join_pq, r) != lattice_join(p, lattice_join(q, r))) {
            err = "join associativity fails";
        } else if (lattice_meet(meet_pq, r) != lattice_meet(p, lattice_meet(q, r))) {
            err = "meet associativity fails";
        } else if (lattice_join(p, meet_pq) != p || lattice_meet(p, join_pq) != p) {
            err = "absorption fails";
        } else if (lattice_join(p, p) != p || lattice_meet(p, p) != p) {
            err = "idempotence fails";
        } else if (join_pq.rank() + meet_pq.rank() != p.rank() + q.rank()) {
            err = "trace parallelogram law fails";
        } else if (!leq(meet_pq, p) || !leq(p, join_pq)) {
            err = "meet/join violate the order";
        } else {
            const bool order = leq(p, q);
            const bool via_meet = meet_pq == p;
            const bool via_join = join_pq == q;
            if (order != via_meet || order != via_join) {
                err = "order equivalences disagree";
            }
        }

        if (err.empty()) {
            const Projection& lesser = p.rank() <= q.rank() ? p : q;
            const Projection& greater = p.rank() <= q.rank() ? q : p;
            const PartialIsometry u =
                partial_isometry_between(lesser, greater, tol);
            if (const ExactMatrix* ue = std::get_if<ExactMatrix>(&u)) {
                const ExactMatrix range = mul(*ue, adjoint(*ue));
                const Projection initial = Projection::checked(mul(adjoint(*ue), *ue));
                if (range != lesser.matrix()) {
                    err = "exact partial isometry range projection is wrong";
                } else if (!leq(initial, greater)) {
                    err = "exact partial isometry initial space escapes the target";
                }
            } else {
                const ComplexMatrix& uf = std::get<ComplexMatrix>(u);
                const ComplexMatrix range = uf * uf.adjoint();
                const ComplexMatrix initial = uf.adjoint() * uf;
                const ComplexMatrix qc = to_complex(greater.matrix());
                if (max_abs(range - to_complex(lesser.matrix())) > tol) {
                    err = "float partial isometry range projection off tolerance";
                } else if (max_abs(qc * initial - initial) > tol) {
                    err = "float partial isometry initial space escapes the target";
                }
            }
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

SuiteResult run_lattice_map_suite(std::uint64_t seed, int conjugators,
                                  int max_level, long height) {
    Sampler s(seed);
    SuiteResult result{"lattice-map", 0, 0, {}};
    for (int t = 0; t < conjugators; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const Twist twist = s.below(2) == 0 ? Twist::none : Twist::adjoint;
        const ConjugationIso iso =
            ConjugationIso::make(s.invertible(n, height, cx), twist);
        const Projection p = s.projection(n, height, cx);
        const Projection q = s.projection(n, height, cx);
        const Projection image_p = lattice_image(iso, p);
        const Projection image_q = lattice_image(iso, q);

        std::string err;
        if (leq(p, q) != leq(image_p, image_q)) {
            err = "order is not preserved in both directions";
        } else {
            const Projection meet_pq = lattice_meet(p, q);
            if (!leq(lattice_image(iso, meet_pq), image_q)) {
                err = "guaranteed order pair is not preserved";
            } else if (lattice_image(iso, lattice_join(p, q)) !=
                       lattice_join(image_p, image_q)) {
                err = "join homomorphism fails";
            } else if (lattice_image(iso, meet_pq) !=
                       lattice_meet(image_p, image_q)) {
                err = "meet homomorphism fails";
            }
        }
        if (err.empty()) {
            const ExactMatrix x = s.idempotent(n, height, cx);
            if (lattice_image(iso, left_support(x)) !=
                left_support(iso.apply(x))) {
                err = "idempotent support recovery fails";
            } else {
                const Projection one =
                    Projection::trusted(ExactMatrix::identity(n));
                const Projection zero = Projection::trusted(
                    ExactMatrix::zeros(n, n, Repr::diagonal));
                if (lattice_image(iso, one) != one ||
                    lattice_image(iso, zero) != zero) {
                    err = "unit or zero is not preserved";
                }
            }
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

SuiteResult run_polar_cutoff_suite(std::uint64_t seed, int cases, int max_level,
                                   long height, double tol, double residual_tol) {
    Sampler s(seed);
    SuiteResult result{"polar-cutoff", 0, 0, {}};
    for (int t = 0; t < cases; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const ExactMatrix a = well_conditioned_invertible(s, n, height, cx);
        const PolarSplit split = polar_split(a, tol);
        const ComplexMatrix identity_c =
            ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));

        std::string err;
        if (max_abs(split.unitary_part * split.unitary_part.adjoint() -
                    identity_c) > tol) {
            err = "polar split factor is not unitary";
        } else if (max_abs(split.positive_part - split.positive_part.adjoint()) >
                   tol) {
            err = "polar split positive part is not hermitian";
        } else if (min_eigenvalue(split.positive_part) < -tol) {
            err = "polar split positive part has negative spectrum";
        } else {
            // Conjugation by a must match conjugation by the positive part
            // followed by the unitary.
            const ComplexMatrix ac = to_complex(a);
            const ComplexMatrix ac_inv = to_complex(inverse(a));
            const ComplexMatrix b_inv = split.positive_part.inverse();
            for (int probe = 0; probe < 3; ++probe) {
                const ComplexMatrix tc = to_complex(s.matrix(n, n, height, cx));
                const ComplexMatrix lhs = ac * tc * ac_inv;
                const ComplexMatrix rotated =
                    split.unitary_part * tc * split.unitary_part.adjoint();
                const ComplexMatrix rhs = split.positive_part * rotated * b_inv;
                if (max_abs(lhs - rhs) > residual_tol) {
                    err = "conjugation does not factor through the polar split";
                    break;
                }
            }
        }

        if (err.empty()) {
            const ExactMatrix g = well_conditioned_invertible(s, n, height, cx);
            const ExactMatrix positive = mul(adjoint(g), g);
            const SingularProfile profile = singular_values(positive);
            const double fraction =
                static_cast<double>(s.integer(1, 99)) / 100.0;
            const double lambda = std::max(profile.values.front() * fraction,
                                           10 * tol);
            const ComplexMatrix cut = spectral_projection_of_modulus(
                positive, IntervalKind::below_incl, lambda, tol);
            const ComplexMatrix pc = to_complex(positive);
            if (min_eigenvalue(lambda * cut - pc * cut) < -tol) {
                err = "cutoff dominance fails";
            } else {
                const std::size_t above = count_above(profile, lambda, tol);
                const std::size_t inside =
                    count_in_zero_lambda(profile, lambda, tol);
                if (above > profile.dim() - inside) {
                    err = "rank-side cutoff bound fails";
                }
            }
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

SuiteResult run_norm_chain_suite(std::uint64_t seed, int cases, int max_level,
                                 long height, double tol) {
    Sampler s(seed);
    SuiteResult result{"norm-chain", 0, 0, {}};
    for (int t = 0; t < cases; ++t) {
        ++result.cases;
        const int level = random_level(s, max_level);
        const std::size_t n = std::size_t{1} << static_cast<unsigned>(level);
        const bool cx = s.below(2) == 0;
        const TowerElement x(level, s.ring_element(n, height, cx));
        const double log_value = log_norm(x);
        const double l1 = lp_norm(x, 1.0);
        const double l2 = lp_norm(x, 2.0);
        const double l4 = lp_norm(x, 4.0);
        const double measure = measure_distance_to_zero(x);

        std::string err;
        if (log_value > l1 + tol) {
            err = "log norm exceeds the L1 norm";
        } else if (l1 > l2 + tol) {
            err = "L1 exceeds L2";
        } else if (l2 > l4 + tol) {
            err = "L2 exceeds L4";
        } else if (measure > std::sqrt(l1) + tol) {
            err = "measure gauge exceeds the L1 root bound";
        }
        if (!err.empty()) {
            record(result, t, err);
        }
    }
    return result;
}

bool VerifyRunResult::all_pass() const {
    for (const auto& report : reports) {
        if (!report.all_pass()) {
            return false;
        }
    }
    for (const auto& suite : suites) {
        if (!suite.pass()) {
            return false;
        }
    }
    return true;
}

VerifyRunResult run_full_verification(const VerifyRunConfig& config) {
    VerifyRunResult out;
    for (int n = 2; n <= std::min(config.max_level, kMaxDenseLevel); ++n) {
        out.reports.push_back(verify_level(n, VerifyMode::dense));
    }
    for (int n = 2; n <= config.max_level; ++n) {
        out.reports.push_back(verify_level(n, VerifyMode::structured));
    }
    const std::uint64_t seed = config.seed;
    out.suites.push_back(run_ring_axiom_suite(seed + 1, 60, 4, 16));
    out.suites.push_back(run_rank_metric_suite(seed + 2, 40, 4, 16));
    out.suites.push_back(run_lattice_suite(seed + 3, 40, 3, 8, config.tol));
    out.suites.push_back(run_lattice_map_suite(seed + 4, 20, 3, 8));
    out.suites.push_back(
        run_polar_cutoff_suite(seed + 5, 12, 3, 8, config.tol, 1e-8));
    out.suites.push_back(run_norm_chain_suite(seed + 6, 60, 4, 16, config.tol));
    return out;
}

}  // namespace fintower
