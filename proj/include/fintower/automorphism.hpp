#pragma once

#include "fintower/regular.hpp"
#include "fintower/tower.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fintower {

/// The inner conjugator at one tower level: the step matrix c has diagonal
/// pattern (2^n, 1) repeated, a is the product of all steps promoted to
/// level n, and gamma is the diagonal of a.  gamma obeys the doubling
/// recursion, so consecutive entries satisfy gamma_{2k-1} = 2^n gamma_{2k}.
struct ConjugatorLevel {
    int level = 0;
    TowerElement c;
    TowerElement a;
    TowerElement a_inv;
    std::vector<Rational> gamma;
};

/// Diagonal (2^n, 1, 2^n, 1, ...) at level n >= 1.
TowerElement build_c(int n);

/// Accumulates the step product a_n = c_n (c_{n-1} promoted) ... (c_1
/// promoted) by exact diagonal multiplication, then reads off gamma and the
/// inverse.  The gamma ratio invariant is validated on construction.
ConjugatorLevel build_a(int n);

/// The odd-to-even shift v_n = sum of e_{2i-1,2i}, a partial isometry with
/// v v* the odd-diagonal projection.  Defined here for every n >= 1.
TowerElement build_v(int n);

/// Phi_n(x) = a_n x a_n^(-1), exact; x is promoted to level n first.
TowerElement apply_phi(const ConjugatorLevel& conj, const TowerElement& x);
TowerElement apply_phi(int n, const TowerElement& x);

/// Representation used by a verification run: dense replays every product
/// on dense storage (level <= 6); structured uses diagonal/unit-sparse
/// layouts and scales to level 12 and beyond.
enum class VerifyMode { dense, structured };

const char* verify_mode_name(VerifyMode mode);

/// One machine-checked identity at one level.  On failure the witness names
/// the offending index and the exact residual entry.
struct CheckResult {
    int level = 0;
    std::string check_id;
    std::string statement;
    bool pass = false;
    std::string witness;
};

struct VerificationReport {
    int level = 0;
    VerifyMode mode = VerifyMode::structured;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Runs the five level checks (n >= 2):
///   c1  the step conjugator commutes with every promoted unit of the
///       previous level (exhaustive over all index pairs),
///   c2  conjugation at level n restricts to conjugation at level n-1 on a
///       generating set of the previous level,
///   c3  a_n is diagonal and gamma obeys the doubling recursion and ratio,
///   c4  Phi_n(v_n) = 2^n v_n,
///   c5  normalized trace of the left support of Phi_n(v_n) is 1/2.
/// All comparisons are exact; failures become report entries, not errors.
VerificationReport verify_level(int n, VerifyMode mode = VerifyMode::structured);

/// JSON rows with fields exactly {level, check_id, paper_ref, pass,
/// witness}; paper_ref carries the plain-language statement of the check.
nlohmann::json report_to_json(const VerificationReport& report);

/// One row of the divergence table: the scaled shifts 2^(-n) v_n shrink to
/// zero in every gauge while their conjugated images keep measure distance
/// and support trace pinned at 1/2.
struct DivergenceRow {
    int level = 0;
    Integer operator_scale;        // 2^n
    double measure_scaled = 0.0;   // measure_distance(2^-n v_n)
    double measure_image = 0.0;    // measure_distance(Phi_n(2^-n v_n))
    Rational rank_scaled;          // rank metric of 2^-n v_n to zero
    Rational image_support_trace;  // trace of l(Phi_n(v_n))
};

std::vector<DivergenceRow> divergence_table(int max_level);

/// Columns: level, operator_scale, measure_scaled, measure_image,
/// rank_scaled, support_trace.
std::string divergence_csv(const std::vector<DivergenceRow>& rows);
std::string divergence_markdown(const std::vector<DivergenceRow>& rows);
nlohmann::json divergence_json(const std::vector<DivergenceRow>& rows);

}  // namespace fintower
