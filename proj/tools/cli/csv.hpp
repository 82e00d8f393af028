#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace isrsgn::cli {

struct CsvTable {
  std::vector<std::string> header;  // lower-cased, trimmed
  struct Row {
    std::size_t line;  // 1-based line in the source
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;

  /// Index of a header column, or npos.
  std::size_t column(std::string_view name) const;
};

/// Splits comma-separated text. Blank lines and lines starting with '#' are
/// skipped; the first remaining line is the header. Throws InputError when
/// there is no header or a row has the wrong number of cells.
CsvTable parse_csv(std::string_view text, std::string_view source);

/// Locale-independent parse of a full cell. Throws InputError naming the
/// source and line.
double parse_number(std::string_view cell, std::string_view source, std::size_t line);

/// Shortest representation that reads back to the same double.
std::string format_number(double value);

std::string read_file(const std::string& path);

}  // namespace isrsgn::cli
