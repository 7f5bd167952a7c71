#include "fintower/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace fintower {

namespace {

std::pair<std::size_t, std::size_t> offset_to_position(const std::string& text,
                                                       std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t last_newline = 0;
    bool seen_newline = false;
    for (std::size_t k = 0; k < offset; ++k) {
        if (text[k] == '\n') {
            ++line;
            last_newline = k;
            seen_newline = true;
        }
    }
    const std::size_t column = seen_newline ? offset - last_newline : offset + 1;
    return {line, column};
}

// Position of the n-th occurrence (0-based) of the quoted cell token, so
// scalar errors can point at the actual text.
std::pair<std::size_t, std::size_t> locate_cell(const std::string& text,
                                                const std::string& raw,
                                                std::size_t skip) {
    const std::string needle = "\"" + raw + "\"";
    std::size_t from = 0;
    while (true) {
        const std::size_t at = text.find(needle, from);
        if (at == std::string::npos) {
            return {1, 1};
        }
        if (skip == 0) {
            return offset_to_position(text, at + 1);
        }
        --skip;
        from = at + 1;
    }
}

}  // namespace

MatrixDocument parse_matrix_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] =
            offset_to_position(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON", line, column);
    }
    if (!doc.is_object()) {
        throw ParseError("top-level value must be an object", 1, 1);
    }
    MatrixDocument out;
    if (doc.contains("level")) {
        const auto& lv = doc.at("level");
        if (!lv.is_number_integer() || lv.get<long long>() < 0 ||
            lv.get<long long>() > 62) {
            throw ParseError("\"level\" must be an integer in [0, 62]", 1, 1);
        }
        out.level = lv.get<int>();
    }
    if (!doc.contains("rows") || !doc.at("rows").is_array()) {
        throw ParseError("missing \"rows\" array", 1, 1);
    }
    const auto& rows = doc.at("rows");
    if (rows.empty() || (rows.front().is_array() && rows.front().empty())) {
        throw ParseError("\"rows\" must be a non-empty grid", 1, 1);
    }
    std::vector<std::vector<GaussianRational>> grid;
    grid.reserve(rows.size());
    std::size_t width = 0;
    // Count equal raw cells seen so far, to point errors at the right one.
    std::vector<std::pair<std::string, std::size_t>> seen;
    auto occurrences_of = [&seen](const std::string& raw) {
        for (auto& [token, count] : seen) {
            if (token == raw) {
                return count++;
            }
        }
        seen.emplace_back(raw, 1);
        return std::size_t{0};
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array()) {
            throw ParseError("row " + std::to_string(i + 1) + " is not an array",
                             1, 1);
        }
        if (i == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                                 std::to_string(row.size()) +
                                 " cells, expected " + std::to_string(width),
                             1, 1);
        }
        std::vector<GaussianRational> values;
        values.reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto& cell = row.at(j);
            if (!cell.is_string()) {
                throw ParseError("cell at row " + std::to_string(i + 1) +
                                     ", column " + std::to_string(j + 1) +
                                     " is not a string",
                                 1, 1);
            }
            const std::string raw = cell.get<std::string>();
            const std::size_t skip = occurrences_of(raw);
            try {
                values.push_back(parse_scalar(raw));
            } catch (const std::invalid_argument& e) {
                const auto [line, column] = locate_cell(text, raw, skip);
                throw ParseError("cell at row " + std::to_string(i + 1) +
                                     ", column " + std::to_string(j + 1) + ": " +
                                     e.what(),
                                 line, column);
            }
        }
        grid.push_back(std::move(values));
    }
    out.matrix = ExactMatrix::from_rows(std::move(grid));
    if (out.level) {
        const std::size_t expected = std::size_t{1}
                                     << static_cast<unsigned>(*out.level);
        if (out.matrix.rows() != expected || out.matrix.cols() != expected) {
            throw ParseError(
                "level " + std::to_string(*out.level) + " implies shape " +
                    std::to_string(expected) + "x" + std::to_string(expected) +
                    ", but the rows give " + out.matrix.shape_string(),
                1, 1);
        }
    }
    return out;
}

MatrixDocument load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_json(buffer.str());
}

nlohmann::json matrix_to_json(const ExactMatrix& m, std::optional<int> level) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(format_scalar(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    if (level) {
        doc["level"] = *level;
    }
    doc["rows"] = std::move(rows);
    return doc;
}

std::string matrix_to_csv(const ExactMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) {
                out += ",";
            }
            out += format_scalar(m.at(i, j));
        }
        out += "\n";
    }
    return out;
}

std::string matrix_to_markdown(const ExactMatrix& m) {
    std::string out = "|";
    for (std::size_t j = 0; j < m.cols(); ++j) {
        out += " c" + std::to_string(j + 1) + " |";
    }
    out += "\n|";
    for (std::size_t j = 0; j < m.cols(); ++j) {
        out += " --- |";
    }
    out += "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += "|";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out += " " + format_scalar(m.at(i, j)) + " |";
        }
        out += "\n";
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace fintower
