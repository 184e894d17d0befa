#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logicnet {

/// Header plus records of a delimited text file. Fields are unquoted and untrimmed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Source line of each record (1-based), for error messages.
  std::vector<std::size_t> lines;
};

/// Reads RFC 4180 style CSV: quoted fields may contain the delimiter, doubled quotes and newlines.
/// Blank lines are skipped. An empty stream yields an empty table.
CsvTable read_csv(std::istream& in, char delimiter = ',');

void write_csv_row(std::ostream& out, std::span<const std::string> fields, char delimiter = ',');

/// Parses a finite decimal number, ignoring surrounding blanks.
std::optional<double> parse_number(std::string_view text);

/// Shortest text that parses back to exactly `value`.
std::string format_number(double value);

std::string_view trim(std::string_view text);

/// Whole file as text; throws DataError(io) when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace logicnet
