#include "logicnet/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"

namespace logicnet {

namespace {

void check_lengths(std::size_t values, std::size_t labels) {
  if (values != labels) {
    throw DimensionError("values and labels differ in length");
  }
  if (values < 2) {
    throw EncodingError("need at least 2 values to fit an encoder");
  }
}

std::size_t minority_count(std::span<const Bit> labels) {
  const auto ones = static_cast<std::size_t>(std::ranges::count(labels, Bit{1}));
  return std::min(ones, labels.size() - ones);
}

Encoder degenerate_encoder(std::string feature, FeatureKind kind, std::span<const Bit> labels) {
  Encoder enc;
  enc.feature = std::move(feature);
  enc.kind = kind;
  enc.error = minority_count(labels);
  enc.degenerate = true;
  return enc;
}

}  // namespace

Bit Encoder::encode(double value) const {
  if (degenerate) {
    throw EncodingError("feature '" + feature + "' is degenerate and cannot be encoded");
  }
  if (kind == FeatureKind::nominal) {
    throw EncodingError("feature '" + feature + "' is nominal; numeric value given");
  }
  return value > threshold ? polarity : static_cast<Bit>(!polarity);
}

Bit Encoder::encode(std::string_view raw) const {
  raw = trim(raw);
  if (kind == FeatureKind::nominal) {
    if (degenerate) {
      throw EncodingError("feature '" + feature + "' is degenerate and cannot be encoded");
    }
    return raw == category ? polarity : static_cast<Bit>(!polarity);
  }
  const auto value = parse_number(raw);
  if (!value) {
    throw EncodingError("feature '" + feature + "': '" + std::string(raw) + "' is not a number");
  }
  return encode(*value);
}

Encoder fit_quantitative(std::string feature, std::span<const double> values, std::span<const Bit> labels) {
  check_lengths(values.size(), labels.size());
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  if (values[order.front()] == values[order.back()]) {
    return degenerate_encoder(std::move(feature), FeatureKind::quantitative, labels);
  }

  const auto total_ones = static_cast<std::size_t>(std::ranges::count(labels, Bit{1}));
  // Sweep the sorted values; at each boundary between distinct values, rows at or below
  // the boundary encode as NOT h and rows above it as h.
  std::size_t ones_below = 0;
  std::size_t seen = 0;
  // (error, -gap, threshold, polarity) ascending
  std::tuple<std::size_t, double, double, Bit> best{n + 1, 0.0, 0.0, 0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ones_below += labels[order[i]];
    ++seen;
    const double lo = values[order[i]];
    const double hi = values[order[i + 1]];
    if (lo == hi) continue;
    const double u = std::midpoint(lo, hi);
    const std::size_t zeros_above = (n - seen) - (total_ones - ones_below);
    // h = 1: errors are zeros above plus ones below.
    const std::size_t e1 = zeros_above + ones_below;
    const std::size_t e0 = n - e1;
    best = std::min(best, std::tuple{e0, -(hi - lo), u, Bit{0}});
    best = std::min(best, std::tuple{e1, -(hi - lo), u, Bit{1}});
  }

  Encoder enc;
  enc.feature = std::move(feature);
  enc.kind = FeatureKind::quantitative;
  enc.error = std::get<0>(best);
  enc.threshold = std::get<2>(best);
  enc.polarity = std::get<3>(best);
  return enc;
}

Encoder fit_boolean(std::string feature, std::span<const Bit> values, std::span<const Bit> labels) {
  check_lengths(values.size(), labels.size());
  if (std::ranges::any_of(values, [](Bit v) { return v > 1; })) {
    throw EncodingError("feature '" + feature + "': boolean values must be 0 or 1");
  }
  if (std::ranges::all_of(values, [&](Bit v) { return v == values.front(); })) {
    return degenerate_encoder(std::move(feature), FeatureKind::boolean, labels);
  }
  const std::size_t identity_errors = hamming(values, labels);
  Encoder enc;
  enc.feature = std::move(feature);
  enc.kind = FeatureKind::boolean;
  enc.threshold = 0.5;
  if (identity_errors <= values.size() - identity_errors) {
    enc.polarity = 1;
    enc.error = identity_errors;
  } else {
    enc.polarity = 0;
    enc.error = values.size() - identity_errors;
  }
  return enc;
}

Encoder fit_nominal(std::string feature, std::span<const std::string> values, std::span<const Bit> labels) {
  check_lengths(values.size(), labels.size());
  std::vector<std::string> categories;
  for (const auto& v : values) {
    if (std::ranges::find(categories, v) == categories.end()) categories.push_back(v);
  }
  if (categories.size() < 2) {
    return degenerate_encoder(std::move(feature), FeatureKind::nominal, labels);
  }
  Encoder enc;
  enc.feature = std::move(feature);
  enc.kind = FeatureKind::nominal;
  std::size_t best = values.size() + 1;
  for (const auto& cat : categories) {
    std::size_t indicator_errors = 0;
    for (std::size_t t = 0; t < values.size(); ++t) {
      indicator_errors += (Bit{values[t] == cat} != labels[t]);
    }
    const std::size_t complement_errors = values.size() - indicator_errors;
    if (indicator_errors < best) {
      best = indicator_errors;
      enc.category = cat;
      enc.polarity = 1;
    }
    if (complement_errors < best) {
      best = complement_errors;
      enc.category = cat;
      enc.polarity = 0;
    }
  }
  enc.error = best;
  return enc;
}

Encoder fit_feature(const Dataset& ds, std::size_t feature) {
  const FeatureSpec& spec = ds.features().at(feature);
  switch (spec.kind) {
    case FeatureKind::quantitative:
      return fit_quantitative(spec.name, ds.numeric_column(feature), ds.labels());
    case FeatureKind::boolean: {
      const auto numeric = ds.numeric_column(feature);
      BitVector bits(numeric.size());
      std::ranges::transform(numeric, bits.begin(), [](double v) { return static_cast<Bit>(v != 0.0); });
      return fit_boolean(spec.name, bits, ds.labels());
    }
    case FeatureKind::nominal:
      return fit_nominal(spec.name, ds.column(feature), ds.labels());
  }
  throw EncodingError("unknown feature kind");
}

EncodedDataset encode_dataset(const Dataset& ds) {
  EncodedDataset out;
  out.labels = ds.labels();
  for (std::size_t j = 0; j < ds.feature_count(); ++j) {
    Encoder enc = fit_feature(ds, j);
    BitVector column(ds.size(), 0);
    if (!enc.degenerate) {
      for (std::size_t t = 0; t < ds.size(); ++t) column[t] = enc.encode(std::string_view(ds.rows()[t][j]));
      out.informative.push_back(j);
    }
    out.errors.push_back(*enc.error);
    out.encoders.push_back(std::move(enc));
    out.columns.push_back(std::move(column));
  }
  return out;
}

}  // namespace logicnet
