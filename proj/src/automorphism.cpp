#include "fintower/automorphism.hpp"

#include "fintower/matrix_io.hpp"
#include "fintower/metrics.hpp"

#include <utility>

namespace fintower {

namespace {

void check_construction_level(int n) {
    if (n < 1 || n > kMaxStructuredLevel) {
        throw LevelRangeError("construction level " + std::to_string(n) +
                              " outside the supported range [1, " +
                              std::to_string(kMaxStructuredLevel) + "]");
    }
}

}  // namespace

TowerElement build_c(int n) {
    check_construction_level(n);
    const std::size_t dim = level_dim(n);
    const Rational big = pow2_rational(n);
    std::vector<GaussianRational> diag(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        diag[i] = (i % 2 == 0) ? GaussianRational(big) : GaussianRational(1);
    }
    return TowerElement(n, ExactMatrix::diagonal_matrix(std::move(diag)));
}

ConjugatorLevel build_a(int n) {
    check_construction_level(n);
    TowerElement a = build_c(1);
    for (int k = 2; k <= n; ++k) {
        a = TowerElement(k, mul(build_c(k).matrix(), promote(a, k).matrix()));
    }
    std::vector<Rational> gamma;
    std::vector<GaussianRational> inv_diag;
    gamma.reserve(a.dim());
    inv_diag.reserve(a.dim());
    for (const auto& d : a.matrix().diagonal_values()) {
        if (!d.is_real() || d.re() <= 0) {
            throw std::logic_error("conjugator diagonal must be positive");
        }
        gamma.push_back(d.re());
        inv_diag.push_back(GaussianRational(Rational(1) / d.re()));
    }
    const Rational ratio = pow2_rational(n);
    for (std::size_t k = 0; 2 * k + 1 < gamma.size(); ++k) {
        if (gamma[2 * k] != ratio * gamma[2 * k + 1]) {
            throw std::logic_error("conjugator diagonal violates the doubling "
                                   "recursion at pair " + std::to_string(k + 1));
        }
    }
    ConjugatorLevel out{n, build_c(n), std::move(a),
                        TowerElement(n, ExactMatrix::diagonal_matrix(
                                            std::move(inv_diag))),
                        std::move(gamma)};
    return out;
}

TowerElement build_v(int n) {
    check_construction_level(n);
    const std::size_t dim = level_dim(n);
    std::vector<MatrixEntry> entries;
    entries.reserve(dim / 2);
    for (std::size_t i = 0; i < dim / 2; ++i) {
        entries.push_back({2 * i, 2 * i + 1, GaussianRational(1)});
    }
    return TowerElement(n, ExactMatrix::from_entries(dim, dim, std::move(entries)));
}

TowerElement apply_phi(const ConjugatorLevel& conj, const TowerElement& x) {
    if (x.level() > conj.level) {
        throw LevelRangeError("element at level " + std::to_string(x.level()) +
                              " cannot be conjugated at level " +
                              std::to_string(conj.level));
    }
    const TowerElement lifted = promote(x, conj.level);
    return TowerElement(conj.level, mul(mul(conj.a.matrix(), lifted.matrix()),
                                        conj.a_inv.matrix()));
}

TowerElement apply_phi(int n, const TowerElement& x) {
    return apply_phi(build_a(n), x);
}

const char* verify_mode_name(VerifyMode mode) {
    return mode == VerifyMode::dense ? "dense" : "structured";
}

bool VerificationReport::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) {
            return false;
        }
    }
    return true;
}

namespace {

// First differing entry between two equal-shape matrices, as "residual r at
// (i, j)" with 1-based coordinates.
std::string first_residual(const ExactMatrix& lhs, const ExactMatrix& rhs) {
    const ExactMatrix diff = sub(lhs, rhs);
    const auto entries = diff.entries();
    if (entries.empty()) {
        return "";
    }
    const auto& e = entries.front();
    return "residual " + format_scalar(e.value) + " at (" +
           std::to_string(e.row + 1) + ", " + std::to_string(e.col + 1) + ")";
}

ConjugatorLevel densify(const ConjugatorLevel& conj) {
    ConjugatorLevel out{
        conj.level,
        TowerElement(conj.level, conj.c.matrix().with_repr(Repr::dense)),
        TowerElement(conj.level, conj.a.matrix().with_repr(Repr::dense)),
        TowerElement(conj.level, conj.a_inv.matrix().with_repr(Repr::dense)),
        conj.gamma};
    return out;
}

CheckResult check_commutation(const ConjugatorLevel& conj, VerifyMode mode) {
    CheckResult out{conj.level, "c1-commutation",
                    "the step conjugator commutes with every unit promoted "
                    "from the previous level",
                    true, ""};
    const std::size_t dim = level_dim(conj.level);
    const std::size_t half = dim / 2;
    const ExactMatrix& step = conj.c.matrix();
    for (std::size_t i = 0; i < half && out.pass; ++i) {
        for (std::size_t j = 0; j < half; ++j) {
            ExactMatrix unit;
            if (mode == VerifyMode::dense) {
                unit = promote(matrix_unit({conj.level - 1, i + 1, j + 1}),
                               conj.level)
                           .matrix()
                           .with_repr(Repr::dense);
            } else {
                unit = ExactMatrix::from_entries(
                    dim, dim,
                    {{2 * i, 2 * j, GaussianRational(1)},
                     {2 * i + 1, 2 * j + 1, GaussianRational(1)}});
            }
            const ExactMatrix lhs = mul(step, unit);
            const ExactMatrix rhs = mul(unit, step);
            if (lhs != rhs) {
                out.pass = false;
                out.witness = "unit (" + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + "): " +
                              first_residual(lhs, rhs);
                break;
            }
        }
    }
    return out;
}

CheckResult check_restriction(const ConjugatorLevel& conj,
                              const ConjugatorLevel& prev) {
    CheckResult out{conj.level, "c2-restriction",
                    "conjugation at this level restricts to conjugation at "
                    "the previous level on its generators",
                    true, ""};
    // e_{k,k+1}, e_{k+1,k}, and e_{1,1} generate the previous level.
    const std::size_t half = level_dim(conj.level - 1);
    std::vector<MatrixUnitIndex> generators;
    generators.push_back({conj.level - 1, 1, 1});
    for (std::size_t k = 1; k < half; ++k) {
        generators.push_back({conj.level - 1, k, k + 1});
        generators.push_back({conj.level - 1, k + 1, k});
    }
    for (const auto& index : generators) {
        const TowerElement x = matrix_unit(index);
        const TowerElement via_top = apply_phi(conj, promote(x, conj.level));
        const TowerElement via_prev = promote(apply_phi(prev, x), conj.level);
        if (via_top != via_prev) {
            out.pass = false;
            out.witness = "generator (" + std::to_string(index.i) + ", " +
                          std::to_string(index.j) + "): " +
                          first_residual(via_top.matrix(), via_prev.matrix());
            break;
        }
    }
    return out;
}

CheckResult check_gamma(const ConjugatorLevel& conj, const ConjugatorLevel& prev) {
    CheckResult out{conj.level, "c3-gamma-recursion",
                    "the conjugator is diagonal and its diagonal obeys the "
                    "doubling recursion with the level ratio",
                    true, ""};
    if (!conj.a.matrix().has_diagonal_support()) {
        out.pass = false;
        out.witness = "conjugator is not diagonal";
        return out;
    }
    const Rational ratio = pow2_rational(conj.level);
    for (std::size_t k = 0; k < prev.gamma.size(); ++k) {
        const Rational& source = prev.gamma[k];
        const Rational& odd = conj.gamma[2 * k];
        const Rational& even = conj.gamma[2 * k + 1];
        if (odd != ratio * source || even != source || odd != ratio * even) {
            out.pass = false;
            out.witness = "pair " + std::to_string(k + 1) + ": got (" +
                          format_rational(odd) + ", " + format_rational(even) +
                          ") from " + format_rational(source);
            return out;
        }
    }
    return out;
}

CheckResult check_shift_scaling(const ConjugatorLevel& conj,
                                const TowerElement& shift) {
    CheckResult out{conj.level, "c4-shift-scaling",
                    "the odd-to-even shift rescales by exactly 2^n under "
                    "conjugation",
                    true, ""};
    const TowerElement image = apply_phi(conj, shift);
    const TowerElement expected =
        GaussianRational(pow2_rational(conj.level)) * shift;
    if (image != expected) {
        out.pass = false;
        out.witness = first_residual(image.matrix(), expected.matrix());
    }
    return out;
}

CheckResult check_support_trace(const ConjugatorLevel& conj,
                                const TowerElement& shift) {
    CheckResult out{conj.level, "c5-support-trace",
                    "the left support of the conjugated shift has normalized "
                    "trace one half",
                    true, ""};
    const TowerElement image = apply_phi(conj, shift);
    const Projection support = left_support(image.matrix());
    const GaussianRational trace =
        trace_normalized(TowerElement(conj.level, support.matrix()));
    if (trace != GaussianRational(make_rational(1, 2))) {
        out.pass = false;
        out.witness = "trace " + format_scalar(trace);
    }
    return out;
}

}  // namespace

VerificationReport verify_level(int n, VerifyMode mode) {
    if (n < 2) {
        throw LevelRangeError("verification needs level >= 2, got " +
                              std::to_string(n));
    }
    if (mode == VerifyMode::dense && n > kMaxDenseLevel) {
        throw LevelRangeError("dense verification is capped at level " +
                              std::to_string(kMaxDenseLevel) + ", got " +
                              std::to_string(n));
    }
    ConjugatorLevel conj = build_a(n);
    ConjugatorLevel prev = build_a(n - 1);
    TowerElement shift = build_v(n);
    if (mode == VerifyMode::dense) {
        conj = densify(conj);
        prev = densify(prev);
        shift = TowerElement(n, shift.matrix().with_repr(Repr::dense));
    }
    VerificationReport report;
    report.level = n;
    report.mode = mode;
    report.checks.push_back(check_commutation(conj, mode));
    report.checks.push_back(check_restriction(conj, prev));
    report.checks.push_back(check_gamma(conj, prev));
    report.checks.push_back(check_shift_scaling(conj, shift));
    report.checks.push_back(check_support_trace(conj, shift));
    return report;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& check : report.checks) {
        rows.push_back({{"level", check.level},
                        {"check_id", check.check_id},
                        {"paper_ref", check.statement},
                        {"pass", check.pass},
                        {"witness", check.witness}});
    }
    return rows;
}

std::vector<DivergenceRow> divergence_table(int max_level) {
    if (max_level < 1 || max_level > kMaxStructuredLevel) {
        throw LevelRangeError("divergence table level " +
                              std::to_string(max_level) +
                              " outside the supported range [1, " +
                              std::to_string(kMaxStructuredLevel) + "]");
    }
    std::vector<DivergenceRow> rows;
    rows.reserve(static_cast<std::size_t>(max_level));
    for (int n = 1; n <= max_level; ++n) {
        const ConjugatorLevel conj = build_a(n);
        const TowerElement shift = build_v(n);
        const TowerElement scaled =
            GaussianRational(pow2_rational(-n)) * shift;
        const TowerElement image = apply_phi(conj, scaled);
        const TowerElement shift_image = apply_phi(conj, shift);
        const Projection support = left_support(shift_image.matrix());
        const GaussianRational trace =
            trace_normalized(TowerElement(n, support.matrix()));
        DivergenceRow row;
        row.level = n;
        row.operator_scale = Integer(1) << static_cast<unsigned>(n);
        row.measure_scaled = measure_distance_to_zero(scaled);
        row.measure_image = measure_distance_to_zero(image);
        row.rank_scaled = rank_metric_to_zero(scaled);
        row.image_support_trace = trace.re();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string divergence_csv(const std::vector<DivergenceRow>& rows) {
    std::string out =
        "level,operator_scale,measure_scaled,measure_image,rank_scaled,"
        "support_trace\n";
    for (const auto& row : rows) {
        out += std::to_string(row.level) + "," + row.operator_scale.str() + "," +
               format_double(row.measure_scaled) + "," +
               format_double(row.measure_image) + "," +
               format_rational(row.rank_scaled) + "," +
               format_rational(row.image_support_trace) + "\n";
    }
    return out;
}

std::string divergence_markdown(const std::vector<DivergenceRow>& rows) {
    std::string out =
        "| level | operator_scale | measure_scaled | measure_image | "
        "rank_scaled | support_trace |\n"
        "| --- | --- | --- | --- | --- | --- |\n";
    for (const auto& row : rows) {
        out += "| " + std::to_string(row.level) + " | " +
               row.operator_scale.str() + " | " +
               format_double(row.measure_scaled) + " | " +
               format_double(row.measure_image) + " | " +
               format_rational(row.rank_scaled) + " | " +
               format_rational(row.image_support_trace) + " |\n";
    }
    return out;
}

nlohmann::json divergence_json(const std::vector<DivergenceRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        out.push_back({{"level", row.level},
                       {"operator_scale", row.operator_scale.str()},
                       {"measure_scaled", row.measure_scaled},
                       {"measure_image", row.measure_image},
                       {"rank_scaled", format_rational(row.rank_scaled)},
                       {"support_trace", format_rational(row.image_support_trace)}});
    }
    return out;
}

}  // namespace fintower
