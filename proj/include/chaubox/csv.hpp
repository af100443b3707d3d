#pragma once

// Strict CSV ingestion: comma separated, optional header row, one numeric
// target column, blank lines skipped. Anything else is an error carrying the
// 1-based line number.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "chaubox/error.hpp"

namespace chaubox::csv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct Table {
  std::vector<Row> rows;
};

/// Column chosen by header name or zero-based index.
using ColumnSelector = std::variant<std::string, std::size_t>;

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Parses a finite decimal number occupying the whole field.
inline std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                         std::chars_format::general);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline Table parse(std::string_view text) {
  Table table;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;

    Row row;
    row.line = line_no;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      row.fields.emplace_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (width == 0) {
      width = row.fields.size();
    } else if (row.fields.size() != width) {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(row.fields.size()),
                  line_no);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) {
    throw Error(ErrorCode::empty_input, "no data rows");
  }
  return table;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

struct Column {
  std::string name;
  std::vector<double> values;
  /// Source line of each value.
  std::vector<std::size_t> lines;
  /// The field text as written, for round-trip checks.
  std::vector<std::string> text;
};

/// Extracts one numeric column. Selecting by name requires a header row;
/// selecting by index treats the first row as a header exactly when its field
/// in that column is not a number.
inline Column select_column(const Table& table, const ColumnSelector& selector) {
  const Row& first = table.rows.front();
  std::size_t index = 0;
  bool has_header = false;
  if (const auto* name = std::get_if<std::string>(&selector)) {
    bool found = false;
    for (std::size_t i = 0; i < first.fields.size(); ++i) {
      if (first.fields[i] == *name) {
        index = i;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(first.line) + ": no column named '" + *name + "'",
                  first.line);
    }
    has_header = true;
  } else {
    index = std::get<std::size_t>(selector);
    if (index >= first.fields.size()) {
      throw Error(ErrorCode::parse_error,
                  "column index " + std::to_string(index) + " out of range (" +
                      std::to_string(first.fields.size()) + " columns)",
                  first.line);
    }
    has_header = !parse_number(first.fields[index]).has_value();
  }

  Column column;
  column.name = has_header ? first.fields[index] : "column_" + std::to_string(index);
  for (std::size_t r = has_header ? 1 : 0; r < table.rows.size(); ++r) {
    const Row& row = table.rows[r];
    const auto value = parse_number(row.fields[index]);
    if (!value) {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(row.line) + ": '" + row.fields[index] + "' is not a finite number",
                  row.line);
    }
    column.values.push_back(*value);
    column.lines.push_back(row.line);
    column.text.push_back(row.fields[index]);
  }
  if (column.values.empty()) {
    throw Error(ErrorCode::empty_input, "column '" + column.name + "' has no values");
  }
  return column;
}

/// Inline data such as "1, 2.5 3": numbers separated by commas and/or spaces.
inline std::vector<double> parse_inline(std::string_view text) {
  std::vector<double> out;
  std::size_t field = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == ';')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != ';') ++j;
    ++field;
    const auto value = parse_number(text.substr(i, j - i));
    if (!value) {
      throw Error(ErrorCode::parse_error,
                  "inline value " + std::to_string(field) + " ('" + std::string(text.substr(i, j - i)) +
                      "') is not a finite number",
                  field);
    }
    out.push_back(*value);
    i = j;
  }
  if (out.empty()) throw Error(ErrorCode::empty_input, "no inline values");
  return out;
}

}  // namespace chaubox::csv
