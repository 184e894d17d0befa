#pragma once

// Brute-force references for tests and the synthetic data generator. Nothing here calls into
// the encoding, trainer, rules evaluation or tabulation code; truth tables are restated locally.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "logicnet/dataset.hpp"
#include "logicnet/decision.hpp"
#include "logicnet/logic.hpp"
#include "logicnet/rules.hpp"

namespace logicnet::oracle {

struct ThresholdChoice {
  double threshold = 0;
  Bit polarity = 0;
  std::size_t error = 0;
  bool constant = false;
};

/// Scans every midpoint of consecutive distinct values under both polarities, counting errors
/// row by row. Ties: widest gap, smallest threshold, polarity 0. `constant` is set when all
/// values are equal (no candidate exists; error is the minority class count).
ThresholdChoice brute_force_threshold(std::span<const double> values, std::span<const Bit> labels);

inline constexpr std::size_t kMaxExhaustiveFeatures = 12;

/// Decision for all 2^q assignments of the q referenced features, by plain recursion over the
/// expression nodes. Entry `code` assigns feature slot s the bit (code >> (q - 1 - s)) & 1.
/// Throws std::invalid_argument when q > kMaxExhaustiveFeatures.
std::vector<SignedDecision> exhaustive_decision_check(const SyndromeComplex& sc);

/// Truth table lookup for ids 0,1,3,5,6,7,8,10,12,13; nullopt otherwise.
std::optional<Bit> truth(int fn, Bit a, Bit b);

struct PlantedSyndrome {
  int fn = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

struct PlantedRuleSpec {
  std::uint64_t seed = 1;
  std::size_t features = 3;
  std::size_t rows = 16;
  std::size_t syndromes = 1;
  /// M; defaults to the smallest strict majority of `syndromes`.
  std::optional<std::size_t> vote_threshold;
  /// Number of labels flipped after generation.
  std::size_t noise = 0;
};

struct PlantedDataset {
  Dataset dataset;
  std::vector<PlantedSyndrome> rule;
  std::size_t vote_threshold = 1;
  /// Hidden bit per feature and row; empty for features the rule does not use.
  std::vector<BitVector> hidden;
  /// Labels before noise.
  BitVector clean_labels;
};

/// Deterministic per seed. Features used by the rule take two values per feature (one per
/// hidden bit, random orientation), so a two-interval split recovers the hidden bits; other
/// features are uniform noise. Label = 1 iff at least M syndromes output 1.
PlantedDataset generate_planted(const PlantedRuleSpec& spec);

/// Shallowest depth (1-based) at which a zero-error unit exists when every chain
/// g(...g(g(x_a, x_b), x_c)..., x_z) is explored without beam limits, keeping a link only when
/// its error does not exceed its parent's or its feature's. Growth ends early when a level's
/// best error is worse than the previous level's. 0 if none within `max_depth`.
/// `columns` are encoded feature bits, `errors` their standalone errors; at most 64 rows.
std::size_t zero_error_chain_depth(const std::vector<BitVector>& columns, std::span<const std::size_t> errors,
                                   std::span<const Bit> labels, std::size_t max_depth, bool extended_catalog = false);

}  // namespace logicnet::oracle
