#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logicnet/logic.hpp"

namespace logicnet {

enum class FeatureKind { quantitative, boolean, nominal };

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> parse_feature_kind(std::string_view text);

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::quantitative;
  /// Column position among the features (the label column is not counted).
  std::size_t index = 0;
};

/// A validated two-class dataset: n >= 2 rows, m features, both classes present.
/// Cells are kept as text so the original values round-trip unchanged.
class Dataset {
 public:
  Dataset(std::vector<FeatureSpec> features, std::vector<std::vector<std::string>> rows,
          BitVector labels, std::array<std::string, 2> class_names = {"0", "1"});

  const std::vector<FeatureSpec>& features() const noexcept { return features_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  const BitVector& labels() const noexcept { return labels_; }
  const std::array<std::string, 2>& class_names() const noexcept { return class_names_; }

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t feature_count() const noexcept { return features_.size(); }

  std::optional<std::size_t> find_feature(std::string_view name) const;
  std::vector<std::string> column(std::size_t feature) const;
  /// Numeric values of a quantitative or boolean column.
  std::vector<double> numeric_column(std::size_t feature) const;

 private:
  std::vector<FeatureSpec> features_;
  std::vector<std::vector<std::string>> rows_;
  BitVector labels_;
  std::array<std::string, 2> class_names_;
};

enum class MissingPolicy { reject, drop_row };

struct LoadOptions {
  std::string label_column = "label";
  std::map<std::string, FeatureKind> kind_overrides;
  char delimiter = ',';
  /// Text labels mapped to class 0 and class 1. "0" and "1" are always accepted.
  std::optional<std::array<std::string, 2>> class_names;
  MissingPolicy missing = MissingPolicy::reject;
};

/// Parses and validates a labelled CSV. Non-fatal findings (dropped rows, contradictory
/// duplicates) are appended to `warnings` when given.
Dataset load_csv(std::istream& in, const LoadOptions& options,
                 std::vector<std::string>* warnings = nullptr);
Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options,
                 std::vector<std::string>* warnings = nullptr);

/// Writes features then the label column. Labels are written with the dataset's class names.
void write_csv(const Dataset& ds, std::ostream& out, std::string_view label_column = "label",
               char delimiter = ',');

/// (count of label 0, count of label 1).
std::pair<std::size_t, std::size_t> class_counts(const Dataset& ds);

/// Kind implied by a column's values: all in {0,1} -> boolean, all numeric -> quantitative,
/// otherwise nominal.
FeatureKind infer_kind(const std::vector<std::string>& values);

}  // namespace logicnet
