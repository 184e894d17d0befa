#include "logicnet/network.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <unordered_map>

#include "logicnet/csv.hpp"
#include "logicnet/errors.hpp"

namespace logicnet {

namespace {

struct Candidate {
  std::size_t error;
  FunctionId fn;
  std::size_t left;
  std::size_t right;
};

// Output vectors packed 64 rows to a word; the bits past the last row stay zero.
using Words = std::vector<std::uint64_t>;

Words pack(std::span<const Bit> v) {
  Words w((v.size() + 63) / 64, 0);
  for (std::size_t t = 0; t < v.size(); ++t) w[t / 64] |= std::uint64_t{v[t] & 1u} << (t % 64);
  return w;
}

BitVector unpack(const Words& w, std::size_t n) {
  BitVector v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = static_cast<Bit>((w[t / 64] >> (t % 64)) & 1u);
  return v;
}

struct PackedData {
  std::size_t rows;
  Words labels;
  std::vector<Words> columns;
  std::uint64_t tail_mask;

  explicit PackedData(const EncodedDataset& enc) : rows(enc.rows()), labels(pack(enc.labels)) {
    for (const auto& c : enc.columns) columns.push_back(pack(c));
    tail_mask = rows % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (rows % 64)) - 1;
  }

  void apply(const LogicFunction& fn, const Words& a, const Words& b, Words& out) const {
    const auto all = [](Bit bit) { return bit ? ~std::uint64_t{0} : std::uint64_t{0}; };
    const std::uint64_t t00 = all(fn(0, 0)), t01 = all(fn(0, 1)), t10 = all(fn(1, 0)), t11 = all(fn(1, 1));
    out.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = (~a[i] & ~b[i] & t00) | (~a[i] & b[i] & t01) | (a[i] & ~b[i] & t10) | (a[i] & b[i] & t11);
    }
    out.back() &= tail_mask;
  }

  std::size_t error(const Words& out) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < out.size(); ++i) e += static_cast<std::size_t>(std::popcount(out[i] ^ labels[i]));
    return e;
  }
};

// Survivors keyed by output vector. Equal outputs mean equal error, so for each vector only
// the smallest (fn, left, right) can ever be selected and the rest are dropped on arrival.
class CandidatePool {
 public:
  explicit CandidatePool(std::size_t rows) : rows_(rows) {}

  void offer(const Candidate& c, const Words& outputs) {
    auto [it, fresh] = pool_.try_emplace(outputs, c);
    if (!fresh && std::tie(c.fn, c.left, c.right) < std::tie(it->second.fn, it->second.left, it->second.right)) {
      it->second = c;
    }
  }

  // Orders by (error, fn, left, right) and keeps at most `beam`.
  Layer select(std::size_t beam) && {
    std::vector<std::pair<Candidate, const Words*>> order;
    order.reserve(pool_.size());
    for (const auto& [key, c] : pool_) order.emplace_back(c, &key);
    std::ranges::sort(order, [](const auto& a, const auto& b) {
      return std::tie(a.first.error, a.first.fn, a.first.left, a.first.right) <
             std::tie(b.first.error, b.first.fn, b.first.left, b.first.right);
    });
    if (order.size() > beam) order.resize(beam);
    Layer layer;
    layer.units.reserve(order.size());
    for (const auto& [c, key] : order) {
      layer.units.push_back(Unit{layer.size() + 1, c.fn, c.left, c.right, unpack(*key, rows_), c.error});
    }
    return layer;
  }

 private:
  struct Hash {
    std::size_t operator()(const Words& w) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (std::uint64_t x : w) h = (h ^ x) * 0xff51afd7ed558ccdull;
      return static_cast<std::size_t>(h ^ (h >> 32));
    }
  };

  std::size_t rows_;
  std::unordered_map<Words, Candidate, Hash> pool_;
};

}  // namespace

std::size_t Layer::min_error() const {
  if (units.empty()) throw std::logic_error("min_error of an empty layer");
  return std::ranges::min_element(units, {}, &Unit::error)->error;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::perfect:
      return "minimum unit error reached 0";
    case StopReason::empty_layer:
      return "no candidate survived selection";
    case StopReason::worse_layer:
      return "next layer was worse than the previous one";
    case StopReason::max_layers:
      return "layer limit reached";
    case StopReason::patience:
      return "no improvement within patience";
  }
  return "?";
}

Layer build_first_layer(const EncodedDataset& enc, const TrainConfig& cfg) {
  const PackedData data(enc);
  CandidatePool pool(data.rows);
  Words out;
  for (std::size_t j : enc.informative) {
    for (std::size_t k : enc.informative) {
      if (j == k) continue;
      for (const LogicFunction& fn : cfg.catalog().functions()) {
        data.apply(fn, data.columns[j], data.columns[k], out);
        const std::size_t e = data.error(out);
        if (e > enc.errors[j] || e > enc.errors[k]) continue;
        pool.offer({e, fn.id, j, k}, out);
      }
    }
  }
  return std::move(pool).select(cfg.beam_width);
}

Layer grow_layer(const Layer& prev, const EncodedDataset& enc, const TrainConfig& cfg) {
  const PackedData data(enc);
  CandidatePool pool(data.rows);
  Words out;
  for (std::size_t p = 0; p < prev.size(); ++p) {
    const Unit& parent = prev.units[p];
    const Words parent_out = pack(parent.outputs);
    for (std::size_t k : enc.informative) {
      for (const LogicFunction& fn : cfg.catalog().functions()) {
        data.apply(fn, parent_out, data.columns[k], out);
        const std::size_t e = data.error(out);
        if (e > parent.error || e > enc.errors[k]) continue;
        if (out == parent_out) continue;
        pool.offer({e, fn.id, p, k}, out);
      }
    }
  }
  return std::move(pool).select(cfg.beam_width);
}

Network::Network(std::vector<Encoder> encoders, std::vector<Layer> layers, std::vector<std::size_t> syndromes,
                 TrainConfig config, std::array<std::string, 2> class_names, StopReason stop,
                 std::size_t training_error)
    : encoders_(std::move(encoders)),
      layers_(std::move(layers)),
      syndromes_(std::move(syndromes)),
      config_(config),
      class_names_(std::move(class_names)),
      stop_(stop),
      training_error_(training_error) {
  if (layers_.empty() || syndromes_.empty()) {
    throw std::invalid_argument("a network needs at least one layer and one syndrome");
  }
}

std::vector<std::vector<bool>> Network::live_units() const {
  std::vector<std::vector<bool>> live(layers_.size());
  for (std::size_t r = 0; r < layers_.size(); ++r) live[r].assign(layers_[r].size(), false);
  for (std::size_t s : syndromes_) live.back()[s] = true;
  for (std::size_t r = layers_.size() - 1; r > 0; --r) {
    for (std::size_t u = 0; u < layers_[r].size(); ++u) {
      if (live[r][u]) live[r - 1][layers_[r].units[u].left] = true;
    }
  }
  return live;
}

std::vector<std::size_t> Network::used_features() const {
  const auto live = live_units();
  std::vector<bool> used(encoders_.size(), false);
  for (std::size_t r = 0; r < layers_.size(); ++r) {
    for (std::size_t u = 0; u < layers_[r].size(); ++u) {
      if (!live[r][u]) continue;
      const Unit& unit = layers_[r].units[u];
      if (r == 0) used[unit.left] = true;
      used[unit.right] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (used[j]) out.push_back(j);
  }
  return out;
}

SignedDecision Network::classify_encoded(std::span<const Bit> bits) const {
  if (bits.size() != encoders_.size()) {
    throw DimensionError("expected " + std::to_string(encoders_.size()) + " encoded features, got " +
                         std::to_string(bits.size()));
  }
  const Catalog& cat = Catalog::extended();
  BitVector prev;
  BitVector current;
  for (std::size_t r = 0; r < layers_.size(); ++r) {
    current.assign(layers_[r].size(), 0);
    for (std::size_t u = 0; u < layers_[r].size(); ++u) {
      const Unit& unit = layers_[r].units[u];
      const Bit left = r == 0 ? bits[unit.left] : prev[unit.left];
      current[u] = cat.at(unit.fn)(left, bits[unit.right]);
    }
    prev.swap(current);
  }
  std::size_t ones = 0;
  for (std::size_t s : syndromes_) ones += prev[s];
  return SignedDecision::from_votes(ones, syndromes_.size());
}

SignedDecision Network::classify(std::span<const std::string> row) const {
  if (row.size() != encoders_.size()) {
    throw DimensionError("expected " + std::to_string(encoders_.size()) + " values, got " +
                         std::to_string(row.size()));
  }
  BitVector bits(encoders_.size(), 0);
  for (std::size_t j : used_features()) {
    if (trim(row[j]).empty()) {
      throw EvaluationError("missing value for feature '" + encoders_[j].feature + "'");
    }
    bits[j] = encoders_[j].encode(std::string_view(row[j]));
  }
  return classify_encoded(bits);
}

Network train(const EncodedDataset& enc, const TrainConfig& cfg, std::array<std::string, 2> class_names) {
  if (enc.informative.empty()) {
    throw TrainingError("no informative features");
  }
  if (enc.informative.size() < 2) {
    throw TrainingError("only one informative feature ('" + enc.encoders[enc.informative.front()].feature +
                        "'); at least two are needed to form a unit");
  }
  if (cfg.beam_width == 0 || cfg.max_layers == 0 || cfg.patience == 0) {
    throw TrainingError("beam width, max layers and patience must be positive");
  }

  std::vector<Layer> layers;
  layers.push_back(build_first_layer(enc, cfg));
  if (layers.front().empty()) {
    const std::size_t ones = static_cast<std::size_t>(std::ranges::count(enc.labels, Bit{1}));
    const std::size_t minority = std::min(ones, enc.rows() - ones);
    const bool all_worse = std::ranges::all_of(enc.informative, [&](std::size_t j) { return enc.errors[j] > minority; });
    throw TrainingError(all_worse ? "empty first layer: every feature is worse than predicting the majority class"
                                  : "empty first layer: no pair of features produced a unit at least as good as both operands");
  }

  StopReason stop = StopReason::max_layers;
  std::size_t best = layers.front().min_error();
  std::size_t stall = 0;
  if (best == 0) {
    stop = StopReason::perfect;
  } else {
    while (layers.size() < cfg.max_layers) {
      Layer next = grow_layer(layers.back(), enc, cfg);
      if (next.empty()) {
        stop = StopReason::empty_layer;
        break;
      }
      // Storing a worse layer would break the non-increasing layer minimum.
      if (next.min_error() > layers.back().min_error()) {
        stop = StopReason::worse_layer;
        break;
      }
      layers.push_back(std::move(next));
      const std::size_t e = layers.back().min_error();
      if (e == 0) {
        stop = StopReason::perfect;
        break;
      }
      if (e < best) {
        best = e;
        stall = 0;
      } else if (++stall >= cfg.patience) {
        stop = StopReason::patience;
        break;
      }
    }
  }

  // The final layer is the earliest one that attains the lowest minimum error.
  std::size_t keep = 0;
  for (std::size_t r = 1; r < layers.size(); ++r) {
    if (layers[r].min_error() < layers[keep].min_error()) keep = r;
  }
  layers.resize(keep + 1);

  const Layer& last = layers.back();
  const std::size_t last_min = last.min_error();
  std::vector<std::size_t> syndromes;
  for (std::size_t u = 0; u < last.size(); ++u) {
    if (cfg.syndromes == SyndromeSelection::whole_layer || last.units[u].error == last_min) {
      syndromes.push_back(u);
    }
  }

  std::size_t training_error = 0;
  for (std::size_t t = 0; t < enc.rows(); ++t) {
    std::size_t ones = 0;
    for (std::size_t s : syndromes) ones += last.units[s].outputs[t];
    const auto label = SignedDecision::from_votes(ones, syndromes.size()).label();
    training_error += !label || *label != enc.labels[t];
  }

  return Network(enc.encoders, std::move(layers), std::move(syndromes), cfg, std::move(class_names), stop,
                 training_error);
}

Network train(const Dataset& ds, const TrainConfig& cfg) { return train(encode_dataset(ds), cfg, ds.class_names()); }

}  // namespace logicnet
