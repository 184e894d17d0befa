#include "logicnet/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"

namespace logicnet {

namespace {

bool conforms(FeatureKind kind, const std::string& value) {
  switch (kind) {
    case FeatureKind::quantitative:
      return parse_number(value).has_value();
    case FeatureKind::boolean: {
      const auto v = parse_number(value);
      return v && (*v == 0.0 || *v == 1.0);
    }
    case FeatureKind::nominal:
      return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::quantitative:
      return "quantitative";
    case FeatureKind::boolean:
      return "boolean";
    case FeatureKind::nominal:
      return "nominal";
  }
  return "?";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view text) {
  if (text == "quantitative") return FeatureKind::quantitative;
  if (text == "boolean") return FeatureKind::boolean;
  if (text == "nominal") return FeatureKind::nominal;
  return std::nullopt;
}

FeatureKind infer_kind(const std::vector<std::string>& values) {
  bool numeric = true;
  bool binary = true;
  for (const auto& v : values) {
    const auto x = parse_number(v);
    if (!x) {
      numeric = false;
      break;
    }
    binary = binary && (*x == 0.0 || *x == 1.0);
  }
  if (numeric && binary) return FeatureKind::boolean;
  if (numeric) return FeatureKind::quantitative;
  return FeatureKind::nominal;
}

Dataset::Dataset(std::vector<FeatureSpec> features, std::vector<std::vector<std::string>> rows,
                 BitVector labels, std::array<std::string, 2> class_names)
    : features_(std::move(features)),
      rows_(std::move(rows)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
  std::set<std::string_view> names;
  for (std::size_t j = 0; j < features_.size(); ++j) {
    features_[j].index = j;
    if (!names.insert(features_[j].name).second) {
      throw DataError(DataErrorKind::duplicate_feature,
                      "duplicate feature name '" + features_[j].name + "'");
    }
  }
  if (labels_.size() != rows_.size()) {
    throw DataError(DataErrorKind::ragged_row, "label count differs from row count");
  }
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    if (rows_[t].size() != features_.size()) {
      throw DataError(DataErrorKind::ragged_row, "row " + std::to_string(t + 1) + " has " +
                                                     std::to_string(rows_[t].size()) +
                                                     " values, expected " +
                                                     std::to_string(features_.size()));
    }
    if (labels_[t] > 1) {
      throw DataError(DataErrorKind::bad_label, "row " + std::to_string(t + 1) + ": label not in {0,1}");
    }
    for (std::size_t j = 0; j < features_.size(); ++j) {
      if (trim(rows_[t][j]).empty()) {
        throw DataError(DataErrorKind::missing_cell, "row " + std::to_string(t + 1) +
                                                         ": missing value for '" +
                                                         features_[j].name + "'");
      }
      if (!conforms(features_[j].kind, rows_[t][j])) {
        throw DataError(DataErrorKind::kind_mismatch,
                        "row " + std::to_string(t + 1) + ": value '" + rows_[t][j] +
                            "' is not " + std::string(to_string(features_[j].kind)) +
                            " (feature '" + features_[j].name + "')");
      }
    }
  }
  if (rows_.size() < 2) {
    throw DataError(DataErrorKind::too_few_rows, "need at least 2 rows, got " + std::to_string(rows_.size()));
  }
  const auto ones = static_cast<std::size_t>(std::ranges::count(labels_, Bit{1}));
  if (ones == 0 || ones == labels_.size()) {
    throw DataError(DataErrorKind::empty_class,
                    "empty class: no rows labelled '" + class_names_[ones == 0 ? 1 : 0] + "'");
  }
}

std::optional<std::size_t> Dataset::find_feature(std::string_view name) const {
  for (const auto& f : features_) {
    if (f.name == name) return f.index;
  }
  return std::nullopt;
}

std::vector<std::string> Dataset::column(std::size_t feature) const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.at(feature));
  return out;
}

std::vector<double> Dataset::numeric_column(std::size_t feature) const {
  if (features_.at(feature).kind == FeatureKind::nominal) {
    throw DataError(DataErrorKind::kind_mismatch, "feature '" + features_[feature].name + "' is nominal");
  }
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(*parse_number(row[feature]));
  return out;
}

Dataset load_csv(std::istream& in, const LoadOptions& options, std::vector<std::string>* warnings) {
  CsvTable table = read_csv(in, options.delimiter);
  if (table.header.empty()) {
    throw DataError(DataErrorKind::no_header, "input has no header row");
  }
  for (auto& h : table.header) h = std::string(trim(h));

  const auto label_it = std::ranges::find(table.header, options.label_column);
  if (label_it == table.header.end()) {
    throw DataError(DataErrorKind::missing_label_column,
                    "label column '" + options.label_column + "' not found");
  }
  const auto label_col = static_cast<std::size_t>(label_it - table.header.begin());
  for (const auto& [name, kind] : options.kind_overrides) {
    if (name == options.label_column || std::ranges::find(table.header, name) == table.header.end()) {
      throw DataError(DataErrorKind::unknown_feature, "kind override for unknown feature '" + name + "'");
    }
  }

  auto parse_label = [&](std::string_view text, std::size_t line) -> Bit {
    text = trim(text);
    if (options.class_names) {
      if (text == (*options.class_names)[0]) return 0;
      if (text == (*options.class_names)[1]) return 1;
    }
    if (const auto v = parse_number(text); v && (*v == 0.0 || *v == 1.0)) {
      return static_cast<Bit>(*v);
    }
    throw DataError(DataErrorKind::bad_label,
                    "line " + std::to_string(line) + ": label '" + std::string(text) + "' is outside the class domain");
  };

  std::vector<std::vector<std::string>> rows;
  BitVector labels;
  std::vector<std::size_t> lines;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& rec = table.rows[r];
    const std::size_t line = table.lines[r];
    if (rec.size() != table.header.size()) {
      throw DataError(DataErrorKind::ragged_row, "line " + std::to_string(line) + " has " +
                                                     std::to_string(rec.size()) + " fields, header has " +
                                                     std::to_string(table.header.size()));
    }
    const bool incomplete = std::ranges::any_of(rec, [](const std::string& f) { return trim(f).empty(); });
    if (incomplete) {
      if (options.missing == MissingPolicy::drop_row) {
        if (warnings) warnings->push_back("dropped incomplete row on line " + std::to_string(line));
        continue;
      }
      const auto col = static_cast<std::size_t>(
          std::ranges::find_if(rec, [](const std::string& f) { return trim(f).empty(); }) - rec.begin());
      throw DataError(DataErrorKind::missing_cell, "line " + std::to_string(line) + ": missing value in column '" +
                                                       table.header[col] + "'");
    }
    labels.push_back(parse_label(rec[label_col], line));
    std::vector<std::string> values;
    values.reserve(rec.size() - 1);
    for (std::size_t c = 0; c < rec.size(); ++c) {
      if (c != label_col) values.emplace_back(trim(rec[c]));
    }
    rows.push_back(std::move(values));
    lines.push_back(line);
  }

  std::vector<FeatureSpec> features;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == label_col) continue;
    FeatureSpec spec{table.header[c], FeatureKind::nominal, features.size()};
    if (auto it = options.kind_overrides.find(spec.name); it != options.kind_overrides.end()) {
      spec.kind = it->second;
    } else {
      std::vector<std::string> values;
      for (const auto& row : rows) values.push_back(row[spec.index]);
      spec.kind = infer_kind(values);
    }
    features.push_back(std::move(spec));
  }

  if (warnings) {
    std::map<std::vector<std::string>, std::vector<std::size_t>> seen;
    for (std::size_t t = 0; t < rows.size(); ++t) seen[rows[t]].push_back(t);
    for (const auto& [values, idx] : seen) {
      const bool mixed = std::ranges::any_of(idx, [&](std::size_t t) { return labels[t] != labels[idx.front()]; });
      if (!mixed) continue;
      std::string msg = "contradictory duplicate rows on lines";
      for (std::size_t t : idx) msg += " " + std::to_string(lines[t]);
      warnings->push_back(msg);
    }
  }

  std::array<std::string, 2> names{"0", "1"};
  if (options.class_names) names = *options.class_names;
  return Dataset(std::move(features), std::move(rows), std::move(labels), std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options,
                 std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataErrorKind::io, "cannot open '" + path.string() + "'");
  }
  return load_csv(in, options, warnings);
}

void write_csv(const Dataset& ds, std::ostream& out, std::string_view label_column, char delimiter) {
  std::vector<std::string> fields;
  for (const auto& f : ds.features()) fields.push_back(f.name);
  fields.emplace_back(label_column);
  write_csv_row(out, fields, delimiter);
  for (std::size_t t = 0; t < ds.size(); ++t) {
    fields = ds.rows()[t];
    fields.push_back(ds.class_names()[ds.labels()[t]]);
    write_csv_row(out, fields, delimiter);
  }
}

std::pair<std::size_t, std::size_t> class_counts(const Dataset& ds) {
  const auto ones = static_cast<std::size_t>(std::ranges::count(ds.labels(), Bit{1}));
  return {ds.size() - ones, ones};
}

}  // namespace logicnet
