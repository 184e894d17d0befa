#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logicnet/rules.hpp"

namespace logicnet {

/// 2^a x 2^b grid of signed decisions. Within the row (column) features the first listed is
/// the slowest-varying bit, so row r holds the assignment whose bits spell r in binary.
struct DiagnosticTable {
  std::vector<std::string> row_features;
  std::vector<std::string> col_features;
  std::size_t syndromes = 0;
  /// Row-major; +M for class 0, -M for class 1, 0 for a tie.
  std::vector<long> cells;

  std::size_t rows() const noexcept { return std::size_t{1} << row_features.size(); }
  std::size_t cols() const noexcept { return std::size_t{1} << col_features.size(); }
  long at(std::size_t r, std::size_t c) const { return cells.at(r * cols() + c); }

  friend bool operator==(const DiagnosticTable&, const DiagnosticTable&) = default;
};

inline constexpr std::size_t kMaxTableFeatures = 16;

/// Features are given by name or "x<index>"; together they must cover the complex's referenced
/// features exactly once. Throws TableError otherwise or past kMaxTableFeatures.
DiagnosticTable make_table(const SyndromeComplex& sc, std::span<const std::string> row_features,
                           std::span<const std::string> col_features);

/// Coordinates (row, col) of every tied cell.
std::vector<std::pair<std::size_t, std::size_t>> detect_contradictions(const DiagnosticTable& t);

enum class TableFormat { text, csv };

std::string render(const DiagnosticTable& t, TableFormat format);

/// Reads the csv rendering back.
DiagnosticTable parse_table_csv(std::string_view text, std::size_t syndromes = 0);

/// Default split of the referenced features: first half (rounded up) as rows.
std::pair<std::vector<std::string>, std::vector<std::string>> default_split(const SyndromeComplex& sc);

}  // namespace logicnet
