#include <doctest.h>

#include "fintower/automorphism.hpp"
#include "fintower/matrix.hpp"
#include "fintower/metrics.hpp"
#include "fintower/tower.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

using namespace fintower;

namespace {

GaussianRational q(long long n, long long d = 1) {
    return GaussianRational(make_rational(n, d));
}

Rational r(long long n, long long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("step conjugators are the expected diagonals") {
    const TowerElement c1 = build_c(1);
    CHECK(c1.level() == 1);
    CHECK(c1.matrix() == ExactMatrix::diagonal_matrix({q(2), q(1)}));

    const TowerElement c2 = build_c(2);
    CHECK(c2.level() == 2);
    CHECK(c2.matrix() ==
          ExactMatrix::diagonal_matrix({q(4), q(1), q(4), q(1)}));

    const TowerElement c3 = build_c(3);
    CHECK(c3.matrix() == ExactMatrix::diagonal_matrix(
                             {q(8), q(1), q(8), q(1), q(8), q(1), q(8), q(1)}));

    CHECK_THROWS_AS(build_c(0), LevelRangeError);
    CHECK_THROWS_AS(build_c(15), LevelRangeError);
}

TEST_CASE("accumulated conjugator at level 2") {
    // a_2 = c_2 * promote(c_1) = diag(4,1,4,1) * diag(2,2,1,1) = diag(8,2,4,1).
    const ConjugatorLevel conj = build_a(2);
    CHECK(conj.level == 2);
    CHECK(conj.a.matrix() ==
          ExactMatrix::diagonal_matrix({q(8), q(2), q(4), q(1)}));
    CHECK(conj.c.matrix() == build_c(2).matrix());

    // gamma is the diagonal and obeys the level-2 doubling ratio.
    REQUIRE(conj.gamma.size() == 4);
    CHECK(conj.gamma[0] == r(8));
    CHECK(conj.gamma[1] == r(2));
    CHECK(conj.gamma[2] == r(4));
    CHECK(conj.gamma[3] == r(1));
    CHECK(conj.gamma[0] == r(4) * conj.gamma[1]);
    CHECK(conj.gamma[2] == r(4) * conj.gamma[3]);

    // The inverse is exact.
    CHECK(conj.a_inv.matrix() ==
          ExactMatrix::diagonal_matrix({q(1, 8), q(1, 2), q(1, 4), q(1)}));
    CHECK((conj.a * conj.a_inv).matrix() == ExactMatrix::identity(4));

    CHECK(trace_normalized(conj.a) == q(15, 4));
}

TEST_CASE("accumulated conjugators stay diagonal with exact inverses") {
    for (int n = 1; n <= 5; ++n) {
        const ConjugatorLevel conj = build_a(n);
        CHECK(conj.level == n);
        CHECK(conj.a.matrix().repr() == Repr::diagonal);
        CHECK((conj.a * conj.a_inv).matrix() ==
              ExactMatrix::identity(level_dim(n)));
        REQUIRE(conj.gamma.size() == level_dim(n));
        const Rational ratio = r(static_cast<long long>(1) << n);
        for (std::size_t k = 0; 2 * k + 1 < conj.gamma.size(); ++k) {
            CHECK(conj.gamma[2 * k] == ratio * conj.gamma[2 * k + 1]);
        }
    }
}

TEST_CASE("shift elements pair odd columns to even columns") {
    const TowerElement v1 = build_v(1);
    CHECK(v1.level() == 1);
    CHECK(v1.matrix() == matrix_unit({1, 1, 2}).matrix());

    const TowerElement v2 = build_v(2);
    CHECK(v2.matrix() ==
          (matrix_unit({2, 1, 2}) + matrix_unit({2, 3, 4})).matrix());

    // v v* is the projection onto the odd coordinates.
    const TowerElement vvT = v2 * adjoint(v2);
    CHECK(vvT.matrix() ==
          ExactMatrix::diagonal_matrix({q(1), q(0), q(1), q(0)}));
    CHECK(trace_normalized(vvT) == q(1, 2));
}

TEST_CASE("conjugation scales the shift by the level power") {
    // Phi_1(e_12) = 2 e_12.
    const TowerElement image1 = apply_phi(1, build_v(1));
    CHECK(image1.matrix() == (q(2) * build_v(1)).matrix());

    // Phi_2(v_2) = 4 v_2.
    const TowerElement image2 = apply_phi(2, build_v(2));
    CHECK(image2 == q(4) * build_v(2));

    // Phi_3(v_3) = 8 v_3.
    CHECK(apply_phi(3, build_v(3)) == q(8) * build_v(3));
}

TEST_CASE("conjugation by the identity is the identity map") {
    // Negative control: with a trivial conjugator nothing is scaled, so the
    // scaling really comes from the accumulated diagonal.
    const ConjugatorLevel trivial{1, identity_at(1), identity_at(1),
                                  identity_at(1), {r(1), r(1)}};
    const TowerElement v = build_v(1);
    CHECK(apply_phi(trivial, v) == v);
}

TEST_CASE("level checks pass in both representations") {
    for (int n = 2; n <= 4; ++n) {
        for (const VerifyMode mode : {VerifyMode::structured, VerifyMode::dense}) {
            const VerificationReport report = verify_level(n, mode);
            CHECK(report.level == n);
            CHECK(report.mode == mode);
            CHECK(report.all_pass());
            REQUIRE(report.checks.size() == 5);
            for (const CheckResult& c : report.checks) {
                CHECK(c.pass);
                CHECK(c.witness.empty());
                CHECK(c.level == n);
                CHECK_FALSE(c.statement.empty());
            }
            // check ids are stable and ordered.
            const std::vector<std::string> expected_ids = {
                "c1-commutation", "c2-restriction", "c3-gamma-recursion",
                "c4-shift-scaling", "c5-support-trace"};
            for (std::size_t k = 0; k < report.checks.size(); ++k) {
                CHECK(report.checks[k].check_id == expected_ids[k]);
            }
        }
    }
}

TEST_CASE("report rows serialize with a fixed field set") {
    const VerificationReport report = verify_level(2);
    const nlohmann::json rows = report_to_json(report);
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        CHECK(row.size() == 5);
        CHECK(row.contains("level"));
        CHECK(row.contains("check_id"));
        CHECK(row.contains("paper_ref"));
        CHECK(row.contains("pass"));
        CHECK(row.contains("witness"));
        CHECK(row.at("pass").get<bool>());
        CHECK_FALSE(row.at("paper_ref").get<std::string>().empty());
    }
}

TEST_CASE("divergence table pins the image gauge at one half") {
    const auto rows = divergence_table(6);
    REQUIRE(rows.size() == 6);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const int n = static_cast<int>(k) + 1;
        const DivergenceRow& row = rows[k];
        CHECK(row.level == n);
        CHECK(row.operator_scale == Integer(static_cast<long long>(1) << n));
        CHECK(std::abs(row.measure_scaled - std::ldexp(1.0, -n)) < 1e-12);
        CHECK(std::abs(row.measure_image - 0.5) < 1e-12);
        CHECK(row.rank_scaled == r(1, 2));
        CHECK(row.image_support_trace == r(1, 2));
    }
}

TEST_CASE("divergence serializations carry the fixed columns") {
    const auto rows = divergence_table(2);

    const std::string csv = divergence_csv(rows);
    CHECK(csv.rfind("level,operator_scale,measure_scaled,measure_image,"
                    "rank_scaled,support_trace\n",
                    0) == 0);
    CHECK(csv.find("\n1,2,0.5,0.5,1/2,1/2\n") != std::string::npos);
    CHECK(csv.find("\n2,4,0.25,0.5,1/2,1/2\n") != std::string::npos);

    const nlohmann::json j = divergence_json(rows);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j.at(0).at("level").get<int>() == 1);
    CHECK(j.at(0).at("operator_scale").get<std::string>() == "2");
    CHECK(j.at(1).at("measure_scaled").get<double>() ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(j.at(1).at("measure_image").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j.at(0).at("rank_scaled").get<std::string>() == "1/2");
    CHECK(j.at(0).at("support_trace").get<std::string>() == "1/2");

    const std::string md = divergence_markdown(rows);
    CHECK(md.find("| level |") != std::string::npos);
    CHECK(md.find("| 1 |") != std::string::npos);
}

TEST_CASE("construction levels are validated") {
    CHECK_THROWS_AS(build_a(0), LevelRangeError);
    CHECK_THROWS_AS(build_v(0), LevelRangeError);
    CHECK_THROWS_AS(verify_level(1), LevelRangeError);
    CHECK_THROWS_AS(verify_level(7, VerifyMode::dense), LevelRangeError);
    CHECK_NOTHROW(verify_level(7, VerifyMode::structured));
    CHECK_THROWS_AS(divergence_table(0), LevelRangeError);
    CHECK_THROWS_AS(divergence_table(15), LevelRangeError);

    // Elements above the conjugator level cannot be pushed through.
    const ConjugatorLevel conj = build_a(2);
    CHECK_THROWS_AS(apply_phi(conj, identity_at(3)), LevelRangeError);
}
