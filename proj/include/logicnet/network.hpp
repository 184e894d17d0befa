#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "logicnet/dataset.hpp"
#include "logicnet/decision.hpp"
#include "logicnet/encoding.hpp"
#include "logicnet/logic.hpp"

namespace logicnet {

/// Which final-layer units become syndromes.
enum class SyndromeSelection {
  /// Units whose training error equals the final layer's minimum.
  best,
  /// Every unit of the final layer.
  whole_layer,
};

struct TrainConfig {
  std::size_t beam_width = 64;
  std::size_t max_layers = 10;
  std::size_t patience = 1;
  bool extended_catalog = false;
  SyndromeSelection syndromes = SyndromeSelection::best;

  const Catalog& catalog() const { return extended_catalog ? Catalog::extended() : Catalog::standard(); }
};

/// A neuron g(left, right). In the first layer both operands are feature indices; in later
/// layers `left` indexes a unit of the previous layer and `right` is a feature index.
struct Unit {
  std::size_t id = 0;
  FunctionId fn;
  std::size_t left = 0;
  std::size_t right = 0;
  /// Output on every training row.
  BitVector outputs;
  std::size_t error = 0;
};

struct Layer {
  std::vector<Unit> units;

  bool empty() const noexcept { return units.empty(); }
  std::size_t size() const noexcept { return units.size(); }
  /// Throws std::logic_error on an empty layer.
  std::size_t min_error() const;
};

enum class StopReason { perfect, empty_layer, worse_layer, max_layers, patience };

std::string_view to_string(StopReason reason);

/// Candidates g(x_j, x_k) over ordered pairs of informative features, kept when their error
/// does not exceed either operand's; deduplicated by output and cut to the beam.
Layer build_first_layer(const EncodedDataset& enc, const TrainConfig& cfg);

/// Candidates g(y, x_k) over the previous layer's units; same selection as the first layer,
/// and a child reproducing its own left parent is dropped.
Layer grow_layer(const Layer& prev, const EncodedDataset& enc, const TrainConfig& cfg);

/// A trained, immutable logic network.
class Network {
 public:
  Network(std::vector<Encoder> encoders, std::vector<Layer> layers, std::vector<std::size_t> syndromes,
          TrainConfig config, std::array<std::string, 2> class_names, StopReason stop, std::size_t training_error);

  const std::vector<Encoder>& encoders() const noexcept { return encoders_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  const Layer& final_layer() const { return layers_.back(); }
  /// Indices into the final layer.
  const std::vector<std::size_t>& syndromes() const noexcept { return syndromes_; }
  const TrainConfig& config() const noexcept { return config_; }
  const std::array<std::string, 2>& class_names() const noexcept { return class_names_; }
  StopReason stop_reason() const noexcept { return stop_; }
  /// Training rows whose M-of-N decision differs from the label (ties count as errors).
  std::size_t training_error() const noexcept { return training_error_; }

  /// Feature indices the syndromes depend on, ascending.
  std::vector<std::size_t> used_features() const;
  /// For each layer, which units the syndromes depend on.
  std::vector<std::vector<bool>> live_units() const;

  /// Votes of the syndromes on an encoded row; `bits[j]` is feature j's encoded value.
  SignedDecision classify_encoded(std::span<const Bit> bits) const;
  /// Encodes a raw row (cells in training feature order) and classifies it. Cells of unused
  /// features are ignored; a blank cell of a used feature is an EvaluationError.
  SignedDecision classify(std::span<const std::string> row) const;

 private:
  std::vector<Encoder> encoders_;
  std::vector<Layer> layers_;
  std::vector<std::size_t> syndromes_;
  TrainConfig config_;
  std::array<std::string, 2> class_names_;
  StopReason stop_;
  std::size_t training_error_;
};

Network train(const EncodedDataset& enc, const TrainConfig& cfg, std::array<std::string, 2> class_names = {"0", "1"});
Network train(const Dataset& ds, const TrainConfig& cfg = {});

}  // namespace logicnet
