#pragma once

#include <string>
#include <vector>

namespace fdakit::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a comma-separated file. No quoting; cells are trimmed of
/// surrounding whitespace and a trailing '\r'. Throws io_error if the file
/// cannot be opened and parse_error on ragged rows.
Table read_table(const std::string& path);

/// Parses a cell as double; throws parse_error naming file/row/column on
/// junk or non-finite values.
double parse_cell(const std::string& cell, const std::string& path, std::size_t row,
                  std::size_t col);

/// Shortest form that round-trips a double exactly (printf %.17g).
std::string g17(double v);

}  // namespace fdakit::csv
