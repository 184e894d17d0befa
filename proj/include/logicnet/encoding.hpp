#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logicnet/dataset.hpp"
#include "logicnet/logic.hpp"

namespace logicnet {

/// Single-threshold binarizer for one feature.
///
/// Quantitative and boolean features encode as `polarity` when the value exceeds `threshold`
/// (strictly) and as NOT `polarity` otherwise; a boolean feature uses threshold 0.5, so
/// polarity 1 is the identity and polarity 0 the complement. A nominal feature encodes as
/// `polarity` when the value equals `category`.
///
/// A degenerate encoder marks a feature that is constant on the training set; it refuses to
/// encode and its error is the minority class count.
struct Encoder {
  std::string feature;
  FeatureKind kind = FeatureKind::quantitative;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  std::string category;
  Bit polarity = 0;
  /// Training errors of the encoded bit used as a class predictor; unknown for
  /// encoders read from a model file that does not record it.
  std::optional<std::size_t> error;
  bool degenerate = false;

  /// Throws EncodingError for a degenerate or nominal encoder.
  Bit encode(double value) const;
  /// Encodes a raw cell of any kind. Throws EncodingError on unparsable input.
  Bit encode(std::string_view raw) const;
};

/// Error-minimizing threshold over midpoints of consecutive distinct values. Ties go to the
/// widest gap, then the smallest threshold, then polarity 0.
Encoder fit_quantitative(std::string feature, std::span<const double> values, std::span<const Bit> labels);

/// Identity or complement, whichever errs less; ties keep the identity.
Encoder fit_boolean(std::string feature, std::span<const Bit> values, std::span<const Bit> labels);

/// Best one-vs-rest indicator. Ties go to the category seen first, then the indicator
/// (polarity 1) before its complement.
Encoder fit_nominal(std::string feature, std::span<const std::string> values, std::span<const Bit> labels);

Encoder fit_feature(const Dataset& ds, std::size_t feature);

/// Binary view of a dataset. `columns[j][t]` is the encoded bit of feature j on row t;
/// degenerate features keep an all-zero column and are left out of `informative`.
struct EncodedDataset {
  std::vector<Encoder> encoders;
  std::vector<BitVector> columns;
  std::vector<std::size_t> errors;
  BitVector labels;
  std::vector<std::size_t> informative;

  std::size_t rows() const noexcept { return labels.size(); }
};

EncodedDataset encode_dataset(const Dataset& ds);

}  // namespace logicnet
