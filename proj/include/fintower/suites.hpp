#pragma once

#include "fintower/automorphism.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fintower {

/// Outcome of one randomized property suite.  Witnesses keep the first few
/// failures in human-readable form.
struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> witnesses;
    bool pass() const { return failures == 0; }
};

/// Partial-inverse identities, support projections, and idempotent/support
/// equations on random exact matrices; every comparison exact.
SuiteResult run_ring_axiom_suite(std::uint64_t seed, int cases, int max_level,
                                 long height);

/// Rank-metric axioms on random same-level triples; values must be dyadic
/// with denominator dividing the level dimension.
SuiteResult run_rank_metric_suite(std::uint64_t seed, int triples, int max_level,
                                  long height);

/// Lattice axioms, the order equivalences, the trace parallelogram law, and
/// partial-isometry construction on random projection pairs.
SuiteResult run_lattice_suite(std::uint64_t seed, int pairs, int max_level,
                              long height, double tol);

/// Conjugation isomorphisms: ring laws, induced lattice map order
/// preservation in both directions, join/meet homomorphism, and idempotent
/// support recovery; every comparison exact.
SuiteResult run_lattice_map_suite(std::uint64_t seed, int conjugators,
                                  int max_level, long height);

/// Polar splits of random invertible conjugators plus spectral cutoffs of
/// random positive elements: residuals within residual_tol, dominance
/// within tol, rank-side bound exact on integer counts.
SuiteResult run_polar_cutoff_suite(std::uint64_t seed, int cases, int max_level,
                                   long height, double tol, double residual_tol);

/// log <= L1 <= L2 <= L4 within tol, plus the measure-vs-L1 root bound.
SuiteResult run_norm_chain_suite(std::uint64_t seed, int cases, int max_level,
                                 long height, double tol);

/// The full verification run behind `verify`: per-level reports (dense
/// where available, structured throughout) plus moderate-size instances of
/// every randomized suite.
struct VerifyRunConfig {
    int max_level = 8;
    std::uint64_t seed = 42;
    double tol = 1e-9;
};

struct VerifyRunResult {
    std::vector<VerificationReport> reports;
    std::vector<SuiteResult> suites;
    bool all_pass() const;
};

VerifyRunResult run_full_verification(const VerifyRunConfig& config);

}  // namespace fintower
