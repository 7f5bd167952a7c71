#pragma once

#include "fintower/matrix.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fintower {

/// Input rejection with a 1-based text position; what() already includes it.
struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t column;
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " (line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ")"),
          line(line),
          column(column) {}
};

/// A matrix as read from disk: the optional tower level plus the entries.
struct MatrixDocument {
    std::optional<int> level;
    ExactMatrix matrix;
};

/// Parses the matrix interchange document
///   { "level": n, "rows": [["1", "1/2+3/4i", ...], ...] }
/// ("level" optional).  Cells use the exact scalar grammar.  Errors carry
/// the offending line and column.
MatrixDocument parse_matrix_json(const std::string& text);

MatrixDocument load_matrix_file(const std::string& path);

/// Serialization is canonical: lowest-terms scalars from the dense view, so
/// two equal matrices serialize to identical bytes whatever their layout.
nlohmann::json matrix_to_json(const ExactMatrix& m,
                              std::optional<int> level = std::nullopt);
std::string matrix_to_csv(const ExactMatrix& m);
std::string matrix_to_markdown(const ExactMatrix& m);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace fintower
