#include <doctest.h>

#include "fintower/suites.hpp"

#include <string>
#include <vector>

using namespace fintower;

TEST_CASE("every randomized suite passes at unit-test size") {
    const SuiteResult ring = run_ring_axiom_suite(101, 20, 3, 8);
    CHECK(ring.name == "ring-axioms");
    CHECK(ring.cases == 20);
    CHECK(ring.failures == 0);
    CHECK(ring.witnesses.empty());
    CHECK(ring.pass());

    const SuiteResult rank = run_rank_metric_suite(102, 15, 3, 8);
    CHECK(rank.name == "rank-metric");
    CHECK(rank.pass());

    const SuiteResult lattice = run_lattice_suite(103, 15, 3, 8, 1e-9);
    CHECK(lattice.name == "lattice");
    CHECK(lattice.pass());

    const SuiteResult maps = run_lattice_map_suite(104, 10, 3, 8);
    CHECK(maps.name == "lattice-map");
    CHECK(maps.pass());

    const SuiteResult polar = run_polar_cutoff_suite(105, 6, 3, 8, 1e-9, 1e-8);
    CHECK(polar.name == "polar-cutoff");
    CHECK(polar.pass());

    const SuiteResult norms = run_norm_chain_suite(106, 20, 3, 8, 1e-9);
    CHECK(norms.name == "norm-chain");
    CHECK(norms.pass());
}

TEST_CASE("suites are deterministic in the seed") {
    const SuiteResult a = run_ring_axiom_suite(7, 10, 3, 8);
    const SuiteResult b = run_ring_axiom_suite(7, 10, 3, 8);
    CHECK(a.cases == b.cases);
    CHECK(a.failures == b.failures);
    CHECK(a.witnesses == b.witnesses);

    const SuiteResult c = run_lattice_suite(11, 8, 3, 8, 1e-9);
    const SuiteResult d = run_lattice_suite(11, 8, 3, 8, 1e-9);
    CHECK(c.failures == d.failures);
    CHECK(c.witnesses == d.witnesses);
}

TEST_CASE("full verification aggregates levels and suites") {
    VerifyRunConfig config;
    config.max_level = 3;
    config.seed = 9;
    config.tol = 1e-9;
    const VerifyRunResult result = run_full_verification(config);

    // Levels 2..3 in both modes while the dense cap allows, structured
    // throughout.
    CHECK(result.reports.size() == 4);
    for (const auto& report : result.reports) {
        CHECK(report.all_pass());
    }

    CHECK(result.suites.size() == 6);
    std::vector<std::string> names;
    names.reserve(result.suites.size());
    for (const auto& suite : result.suites) {
        CHECK(suite.pass());
        names.push_back(suite.name);
    }
    const std::vector<std::string> expect = {"ring-axioms", "rank-metric",
                                             "lattice",     "lattice-map",
                                             "polar-cutoff", "norm-chain"};
    CHECK(names == expect);
    CHECK(result.all_pass());
}
