#pragma once

// Minimal reader for the project's comma-separated files: no quoting,
// '#' comment lines, blank lines skipped, UTF-8, dot decimal separator.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace soilcolor::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line number
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
  // Comment lines (without the leading '#') in file order.
  std::vector<std::string> comments;

  // Column index for `name`, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

// Reads a header line followed by rows. An input with no header yields an
// empty table. Throws LoadError when a row has the wrong field count.
Table read(std::istream& in);
Table read_file(const std::string& path);

// Parses a finite double, throwing LoadError("non-numeric ...") with `line`.
double to_double(const std::string& field, std::size_t line, std::string_view column);
int to_int(const std::string& field, std::size_t line, std::string_view column);

}  // namespace soilcolor::csv
