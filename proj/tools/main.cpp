#include "fintower/isomaps.hpp"
#include "fintower/lattice.hpp"
#include "fintower/matrix_io.hpp"
#include "fintower/metrics.hpp"
#include "fintower/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using fintower::ComplexMatrix;
using fintower::ExactMatrix;
using fintower::Projection;

enum class OutputFormat { json, csv, md };

const std::map<std::string, OutputFormat> kFormatNames{
    {"json", OutputFormat::json},
    {"csv", OutputFormat::csv},
    {"md", OutputFormat::md}};

std::string csv_cell(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) {
        return raw;
    }
    std::string out = "\"";
    for (const char c : raw) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

const char* bool_word(bool value) { return value ? "true" : "false"; }

std::string format_complex_value(const std::complex<double>& z) {
    // Normalize negative zero so equal matrices print identical bytes.
    const double re = z.real() == 0.0 ? 0.0 : z.real();
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    if (im == 0.0) {
        return fintower::format_double(re);
    }
    const std::string imag_part =
        fintower::format_double(im < 0 ? -im : im) + "i";
    if (re == 0.0) {
        return im < 0 ? "-" + imag_part : imag_part;
    }
    return fintower::format_double(re) + (im < 0 ? "-" : "+") + imag_part;
}

nlohmann::json complex_matrix_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(format_complex_value(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", rows}};
}

std::string complex_matrix_csv(const ComplexMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_complex_value(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

std::string complex_matrix_markdown(const ComplexMatrix& m) {
    std::ostringstream out;
    out << '|';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out << " c" << (j + 1) << " |";
    }
    out << "\n|";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out << " --- |";
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << '|';
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << ' ' << format_complex_value(m(i, j)) << " |";
        }
        out << '\n';
    }
    return out.str();
}

/// Keeps the document's level on an output only when the output still has
/// the shape that level implies.
std::optional<int> carried_level(const ExactMatrix& m,
                                 std::optional<int> doc_level) {
    if (!doc_level) {
        return std::nullopt;
    }
    const std::size_t dim = std::size_t{1} << static_cast<unsigned>(*doc_level);
    if (m.rows() == dim && m.cols() == dim) {
        return doc_level;
    }
    return std::nullopt;
}

struct NamedMatrix {
    std::string name;
    ExactMatrix matrix;
    std::optional<int> level;
};

void emit_exact(OutputFormat format, const std::vector<NamedMatrix>& parts) {
    switch (format) {
        case OutputFormat::json: {
            if (parts.size() == 1) {
                std::cout << fintower::matrix_to_json(parts[0].matrix,
                                                      parts[0].level)
                                 .dump(2)
                          << '\n';
                return;
            }
            nlohmann::json out = nlohmann::json::object();
            for (const auto& part : parts) {
                out[part.name] =
                    fintower::matrix_to_json(part.matrix, part.level);
            }
            std::cout << out.dump(2) << '\n';
            return;
        }
        case OutputFormat::csv: {
            bool first = true;
            for (const auto& part : parts) {
                if (!first) {
                    std::cout << '\n';
                }
                first = false;
                if (parts.size() > 1) {
                    std::cout << part.name << '\n';
                }
                std::cout << fintower::matrix_to_csv(part.matrix);
            }
            return;
        }
        case OutputFormat::md: {
            bool first = true;
            for (const auto& part : parts) {
                if (!first) {
                    std::cout << '\n';
                }
                first = false;
                if (parts.size() > 1) {
                    std::cout << "## " << part.name << "\n\n";
                }
                std::cout << fintower::matrix_to_markdown(part.matrix);
            }
            return;
        }
    }
}

int run_verify(int max_level, std::uint64_t seed, double tol,
               OutputFormat format) {
    if (max_level < 2 || max_level > fintower::kMaxStructuredLevel) {
        throw std::runtime_error(
            "verify needs max_level in [2, " +
            std::to_string(fintower::kMaxStructuredLevel) + "], got " +
            std::to_string(max_level));
    }
    if (!(tol > 0)) {
        throw std::runtime_error("tol must be positive, got " +
                                 fintower::format_double(tol));
    }
    fintower::VerifyRunConfig config;
    config.max_level = max_level;
    config.seed = seed;
    config.tol = tol;
    const fintower::VerifyRunResult result = fintower::run_full_verification(config);

    switch (format) {
        case OutputFormat::json: {
            nlohmann::json levels = nlohmann::json::array();
            for (const auto& report : result.reports) {
                for (auto& row : fintower::report_to_json(report)) {
                    levels.push_back(row);
                }
            }
            nlohmann::json suites = nlohmann::json::array();
            for (const auto& suite : result.suites) {
                suites.push_back({{"name", suite.name},
                                  {"cases", suite.cases},
                                  {"failures", suite.failures},
                                  {"witnesses", suite.witnesses}});
            }
            const nlohmann::json out{{"levels", levels},
                                     {"suites", suites},
                                     {"pass", result.all_pass()}};
            std::cout << out.dump(2) << '\n';
            break;
        }
        case OutputFormat::csv: {
            std::cout << "level,mode,check_id,pass,witness\n";
            for (const auto& report : result.reports) {
                for (const auto& check : report.checks) {
                    std::cout << check.level << ','
                              << fintower::verify_mode_name(report.mode) << ','
                              << check.check_id << ',' << bool_word(check.pass)
                              << ',' << csv_cell(check.witness) << '\n';
                }
            }
            std::cout << "\nsuite,cases,failures,witness\n";
            for (const auto& suite : result.suites) {
                const std::string witness =
                    suite.witnesses.empty() ? "" : suite.witnesses.front();
                std::cout << suite.name << ',' << suite.cases << ','
                          << suite.failures << ',' << csv_cell(witness) << '\n';
            }
            break;
        }
        case OutputFormat::md: {
            std::cout << "# verification run\n\n";
            std::cout << "- max_level: " << max_level << '\n';
            std::cout << "- seed: " << seed << '\n';
            std::cout << "- tol: " << fintower::format_double(tol) << "\n\n";
            std::cout << "## level checks\n\n";
            std::cout << "| level | mode | check | pass | witness |\n";
            std::cout << "| --- | --- | --- | --- | --- |\n";
            for (const auto& report : result.reports) {
                for (const auto& check : report.checks) {
                    std::cout << "| " << check.level << " | "
                              << fintower::verify_mode_name(report.mode)
                              << " | " << check.check_id << " | "
                              << bool_word(check.pass) << " | " << check.witness
                              << " |\n";
                }
            }
            std::cout << "\n## randomized suites\n\n";
            std::cout << "| suite | cases | failures | witness |\n";
            std::cout << "| --- | --- | --- | --- |\n";
            for (const auto& suite : result.suites) {
                const std::string witness =
                    suite.witnesses.empty() ? "" : suite.witnesses.front();
                std::cout << "| " << suite.name << " | " << suite.cases
                          << " | " << suite.failures << " | " << witness
                          << " |\n";
            }
            std::cout << "\nresult: " << (result.all_pass() ? "PASS" : "FAIL")
                      << '\n';
            break;
        }
    }
    return result.all_pass() ? 0 : 1;
}

int run_divergence(int max_level, OutputFormat format) {
    if (max_level < 1 || max_level > fintower::kMaxStructuredLevel) {
        throw std::runtime_error(
            "divergence needs max_level in [1, " +
            std::to_string(fintower::kMaxStructuredLevel) + "], got " +
            std::to_string(max_level));
    }
    const auto rows = fintower::divergence_table(max_level);
    switch (format) {
        case OutputFormat::json:
            std::cout << fintower::divergence_json(rows).dump(2) << '\n';
            break;
        case OutputFormat::csv:
            std::cout << fintower::divergence_csv(rows);
            break;
        case OutputFormat::md:
            std::cout << fintower::divergence_markdown(rows);
            break;
    }
    return 0;
}

int run_norms(const std::string& path, double p, OutputFormat format) {
    if (!(p >= 1.0)) {
        throw std::runtime_error("p must be at least 1, got " +
                                 fintower::format_double(p));
    }
    const fintower::MatrixDocument doc = fintower::load_matrix_file(path);
    const fintower::TowerElement x = fintower::to_tower_element(doc);
    const fintower::Rational rank = fintower::rank_metric_to_zero(x);
    const double measure = fintower::measure_distance_to_zero(x);
    const double lp = fintower::lp_norm(x, p);
    const double log_value = fintower::log_norm(x);
    const std::string rank_text = fintower::format_rational(rank);
    const std::string lp_label = "lp_norm(p=" + fintower::format_double(p) + ")";

    switch (format) {
        case OutputFormat::json: {
            const nlohmann::json out{{"rank_to_zero", rank_text},
                                     {"measure_to_zero", measure},
                                     {"p", p},
                                     {"lp_norm", lp},
                                     {"log_norm", log_value}};
            std::cout << out.dump(2) << '\n';
            break;
        }
        case OutputFormat::csv:
            std::cout << "metric,value\n";
            std::cout << "rank_to_zero," << rank_text << '\n';
            std::cout << "measure_to_zero," << fintower::format_double(measure)
                      << '\n';
            std::cout << csv_cell(lp_label) << ','
                      << fintower::format_double(lp) << '\n';
            std::cout << "log_norm," << fintower::format_double(log_value)
                      << '\n';
            break;
        case OutputFormat::md:
            std::cout << "| metric | value |\n| --- | --- |\n";
            std::cout << "| rank_to_zero | " << rank_text << " |\n";
            std::cout << "| measure_to_zero | "
                      << fintower::format_double(measure) << " |\n";
            std::cout << "| " << lp_label << " | "
                      << fintower::format_double(lp) << " |\n";
            std::cout << "| log_norm | " << fintower::format_double(log_value)
                      << " |\n";
            break;
    }
    return 0;
}

int run_support(const std::string& path, OutputFormat format) {
    const fintower::MatrixDocument doc = fintower::load_matrix_file(path);
    const fintower::Supports parts = fintower::supports(doc.matrix);
    emit_exact(format,
               {{"left_support", parts.left.matrix(),
                 carried_level(parts.left.matrix(), doc.level)},
                {"right_support", parts.right.matrix(),
                 carried_level(parts.right.matrix(), doc.level)},
                {"support", parts.support.matrix(),
                 carried_level(parts.support.matrix(), doc.level)}});
    return 0;
}

int run_pinv(const std::string& path, OutputFormat format) {
    const fintower::MatrixDocument doc = fintower::load_matrix_file(path);
    const ExactMatrix result = fintower::partial_inverse(doc.matrix);
    emit_exact(format, {{"partial_inverse", result,
                         carried_level(result, doc.level)}});
    return 0;
}

int run_lattice(const std::string& path_p, const std::string& path_q,
                const std::string& op, OutputFormat format) {
    const fintower::MatrixDocument doc_p = fintower::load_matrix_file(path_p);
    const fintower::MatrixDocument doc_q = fintower::load_matrix_file(path_q);
    if (doc_p.matrix.rows() != doc_q.matrix.rows() ||
        doc_p.matrix.cols() != doc_q.matrix.cols()) {
        throw std::runtime_error(
            "projection shapes differ: " + std::to_string(doc_p.matrix.rows()) +
            "x" + std::to_string(doc_p.matrix.cols()) + " vs " +
            std::to_string(doc_q.matrix.rows()) + "x" +
            std::to_string(doc_q.matrix.cols()));
    }
    const Projection p = Projection::checked(doc_p.matrix);
    const Projection q = Projection::checked(doc_q.matrix);
    const std::optional<int> level = doc_p.level ? doc_p.level : doc_q.level;
    std::vector<NamedMatrix> parts;
    if (op == "meet" || op == "both") {
        const Projection meet = fintower::lattice_meet(p, q);
        parts.push_back({"meet", meet.matrix(),
                         carried_level(meet.matrix(), level)});
    }
    if (op == "join" || op == "both") {
        const Projection join = fintower::lattice_join(p, q);
        parts.push_back({"join", join.matrix(),
                         carried_level(join.matrix(), level)});
    }
    emit_exact(format, parts);
    return 0;
}

int run_lattice_map(const std::string& conj_path, const std::string& proj_path,
                    const std::string& twist_name, OutputFormat format) {
    const fintower::MatrixDocument doc_a = fintower::load_matrix_file(conj_path);
    const fintower::MatrixDocument doc_p = fintower::load_matrix_file(proj_path);
    if (doc_a.matrix.rows() != doc_p.matrix.rows() ||
        doc_a.matrix.cols() != doc_p.matrix.cols()) {
        throw std::runtime_error(
            "conjugator shape " + std::to_string(doc_a.matrix.rows()) + "x" +
            std::to_string(doc_a.matrix.cols()) +
            " does not match projection shape " +
            std::to_string(doc_p.matrix.rows()) + "x" +
            std::to_string(doc_p.matrix.cols()));
    }
    const fintower::Twist twist = twist_name == "adjoint"
                                      ? fintower::Twist::adjoint
                                      : fintower::Twist::none;
    const fintower::ConjugationIso iso =
        fintower::ConjugationIso::make(doc_a.matrix, twist);
    const Projection p = Projection::checked(doc_p.matrix);
    const Projection image = fintower::lattice_image(iso, p);
    emit_exact(format, {{"lattice_image", image.matrix(),
                         carried_level(image.matrix(), doc_p.level)}});
    return 0;
}

int run_polar_split(const std::string& path, double tol, OutputFormat format) {
    if (!(tol > 0)) {
        throw std::runtime_error("tol must be positive, got " +
                                 fintower::format_double(tol));
    }
    const fintower::MatrixDocument doc = fintower::load_matrix_file(path);
    const fintower::PolarSplit split = fintower::polar_split(doc.matrix, tol);
    switch (format) {
        case OutputFormat::json: {
            const nlohmann::json out{
                {"positive", complex_matrix_json(split.positive_part)},
                {"unitary", complex_matrix_json(split.unitary_part)}};
            std::cout << out.dump(2) << '\n';
            break;
        }
        case OutputFormat::csv:
            std::cout << "positive\n"
                      << complex_matrix_csv(split.positive_part) << '\n'
                      << "unitary\n"
                      << complex_matrix_csv(split.unitary_part);
            break;
        case OutputFormat::md:
            std::cout << "## positive\n\n"
                      << complex_matrix_markdown(split.positive_part) << '\n'
                      << "## unitary\n\n"
                      << complex_matrix_markdown(split.unitary_part);
            break;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fintower: exact rational matrix tower toolkit — verification "
        "suites, divergence tables, norms, supports, and projection-lattice "
        "operations"};
    app.require_subcommand(1);

    int max_level = 8;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    double p = 2.0;
    OutputFormat format = OutputFormat::md;
    std::string file_a;
    std::string file_b;
    std::string op_name = "both";
    std::string twist_name = "none";
    int exit_code = 0;

    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: json, csv, md")
            ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));
    };

    CLI::App* verify =
        app.add_subcommand("verify", "run the exact level checks and the "
                                     "randomized property suites");
    verify->add_option("--max-level", max_level,
                       "largest tower level to check (2..14)");
    verify->add_option("--seed", seed, "seed for the randomized suites");
    verify->add_option("--tol", tol, "tolerance for float-path checks");
    add_format(verify);
    verify->callback(
        [&] { exit_code = run_verify(max_level, seed, tol, format); });

    CLI::App* divergence = app.add_subcommand(
        "divergence", "emit the discontinuity table for the scaled shifts");
    divergence->add_option("--max-level", max_level,
                           "largest tower level in the table (1..14)");
    add_format(divergence);
    divergence->callback(
        [&] { exit_code = run_divergence(max_level, format); });

    CLI::App* norms = app.add_subcommand(
        "norms", "print rank distance, measure distance, and norms of a "
                 "matrix file");
    norms->add_option("file", file_a, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    norms->add_option("--p", p, "exponent for the Lp norm (>= 1)");
    add_format(norms);
    norms->callback([&] { exit_code = run_norms(file_a, p, format); });

    CLI::App* support = app.add_subcommand(
        "support", "print the left, right, and two-sided support projections");
    support->add_option("file", file_a, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    add_format(support);
    support->callback([&] { exit_code = run_support(file_a, format); });

    CLI::App* pinv =
        app.add_subcommand("pinv", "print the exact partial inverse");
    pinv->add_option("file", file_a, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    add_format(pinv);
    pinv->callback([&] { exit_code = run_pinv(file_a, format); });

    CLI::App* lattice = app.add_subcommand(
        "lattice", "meet and join of two projection files");
    lattice->add_option("p", file_a, "first projection JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lattice->add_option("q", file_b, "second projection JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lattice->add_option("--op", op_name, "operation: meet, join, both")
        ->transform(CLI::IsMember({"meet", "join", "both"}));
    add_format(lattice);
    lattice->callback(
        [&] { exit_code = run_lattice(file_a, file_b, op_name, format); });

    CLI::App* lattice_map = app.add_subcommand(
        "lattice-map",
        "image of a projection under the lattice map induced by a conjugator");
    lattice_map->add_option("conjugator", file_a, "conjugator JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lattice_map->add_option("projection", file_b, "projection JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    lattice_map
        ->add_option("--twist", twist_name,
                     "none for plain conjugation, adjoint for the "
                     "entrywise-conjugate twist")
        ->transform(CLI::IsMember({"none", "adjoint"}));
    add_format(lattice_map);
    lattice_map->callback([&] {
        exit_code = run_lattice_map(file_a, file_b, twist_name, format);
    });

    CLI::App* polar = app.add_subcommand(
        "polar-split",
        "positive/unitary split of an invertible conjugator (float)");
    polar->add_option("file", file_a, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    polar->add_option("--tol", tol, "singular values at most tol count as zero");
    add_format(polar);
    polar->callback([&] { exit_code = run_polar_split(file_a, tol, format); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const fintower::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
