#include "logicnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "logicnet/csv.hpp"

namespace logicnet::oracle {

namespace {

struct Row {
  int id;
  Bit out[4];
};

constexpr Row kTruth[] = {
    {0, {0, 0, 0, 1}}, {1, {0, 0, 1, 0}},  {3, {0, 1, 0, 0}},  {5, {0, 1, 1, 0}},  {6, {0, 1, 1, 1}},
    {7, {1, 0, 0, 0}}, {8, {1, 0, 0, 1}}, {10, {1, 0, 1, 1}}, {12, {1, 1, 0, 1}}, {13, {1, 1, 1, 0}},
};

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  Bit bit() { return static_cast<Bit>(next() >> 63); }

 private:
  std::uint64_t state_;
};

double tenths(double x) { return std::round(x * 10.0) / 10.0; }

}  // namespace

std::optional<Bit> truth(int fn, Bit a, Bit b) {
  for (const Row& r : kTruth) {
    if (r.id == fn) return r.out[2 * (a & 1) + (b & 1)];
  }
  return std::nullopt;
}

ThresholdChoice brute_force_threshold(std::span<const double> values, std::span<const Bit> labels) {
  const std::size_t n = values.size();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  ThresholdChoice best;
  if (sorted.size() < 2) {
    std::size_t ones = 0;
    for (Bit l : labels) ones += l;
    best.constant = true;
    best.error = std::min(ones, n - ones);
    return best;
  }
  double best_gap = -1;
  best.error = n + 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double u = (sorted[i] + sorted[i + 1]) / 2;
    const double gap = sorted[i + 1] - sorted[i];
    for (Bit h : {Bit{0}, Bit{1}}) {
      std::size_t e = 0;
      for (std::size_t t = 0; t < n; ++t) {
        const Bit code = values[t] > u ? h : Bit(1 - h);
        e += code != labels[t];
      }
      const bool better = e < best.error || (e == best.error && gap > best_gap) ||
                          (e == best.error && gap == best_gap && u < best.threshold);
      if (better) {
        best.error = e;
        best.threshold = u;
        best.polarity = h;
        best_gap = gap;
      }
    }
  }
  return best;
}

std::vector<SignedDecision> exhaustive_decision_check(const SyndromeComplex& sc) {
  const std::size_t q = sc.features().size();
  if (q > kMaxExhaustiveFeatures) {
    throw std::invalid_argument("exhaustive check limited to " + std::to_string(kMaxExhaustiveFeatures) +
                                " features, complex references " + std::to_string(q));
  }
  const auto& nodes = sc.nodes();
  std::vector<Bit> bits(q);
  auto eval = [&](auto&& self, std::size_t node) -> Bit {
    const auto& n = nodes[node];
    if (n.kind == SyndromeComplex::Node::Kind::feature) return bits[n.slot];
    const auto out = truth(n.fn.value, self(self, n.left), self(self, n.right));
    if (!out) throw std::invalid_argument("unknown function id " + std::to_string(n.fn.value));
    return *out;
  };
  std::vector<SignedDecision> out;
  out.reserve(std::size_t{1} << q);
  for (std::size_t code = 0; code < (std::size_t{1} << q); ++code) {
    for (std::size_t s = 0; s < q; ++s) bits[s] = (code >> (q - 1 - s)) & 1;
    SignedDecision d;
    for (std::size_t root : sc.roots()) {
      if (eval(eval, root)) {
        ++d.votes1;
      } else {
        ++d.votes0;
      }
    }
    out.push_back(d);
  }
  return out;
}

PlantedDataset generate_planted(const PlantedRuleSpec& spec) {
  if (spec.features < 2 || spec.rows < 2 || spec.syndromes == 0) {
    throw std::invalid_argument("planted rule needs >= 2 features, >= 2 rows and >= 1 syndrome");
  }
  if (spec.noise > spec.rows) throw std::invalid_argument("more noise flips than rows");
  const std::size_t m = spec.features;
  const std::size_t n = spec.rows;
  const std::size_t threshold = spec.vote_threshold.value_or(spec.syndromes / 2 + 1);
  SplitMix rng(spec.seed);

  constexpr int kStandard[] = {0, 3, 5, 6, 7, 8, 10, 12, 13};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<PlantedSyndrome> rule;
    std::vector<bool> used(m, false);
    for (std::size_t s = 0; s < spec.syndromes; ++s) {
      PlantedSyndrome syn;
      syn.fn = kStandard[rng.below(std::size(kStandard))];
      syn.left = rng.below(m);
      do {
        syn.right = rng.below(m);
      } while (syn.right == syn.left);
      used[syn.left] = used[syn.right] = true;
      rule.push_back(syn);
    }

    std::vector<BitVector> hidden(m);
    std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(m));
    bool usable = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) {
        hidden[j].resize(n);
        for (auto& b : hidden[j]) b = rng.bit();
        const double lo = tenths(rng.uniform() * 100.0);
        const double hi = tenths(lo + 5.0 + rng.uniform() * 45.0);
        const Bit high_means = rng.bit();
        for (std::size_t t = 0; t < n; ++t) rows[t][j] = format_number(hidden[j][t] == high_means ? hi : lo);
        const auto ones = static_cast<std::size_t>(std::count(hidden[j].begin(), hidden[j].end(), Bit{1}));
        usable = usable && ones != 0 && ones != n;
      } else {
        for (std::size_t t = 0; t < n; ++t) rows[t][j] = format_number(tenths(rng.uniform() * 100.0));
      }
    }

    BitVector clean(n);
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t ones = 0;
      for (const auto& syn : rule) ones += *truth(syn.fn, hidden[syn.left][t], hidden[syn.right][t]);
      clean[t] = ones >= threshold;
    }
    BitVector labels = clean;
    std::vector<std::size_t> order(n);
    for (std::size_t t = 0; t < n; ++t) order[t] = t;
    for (std::size_t i = 0; i < spec.noise; ++i) {
      std::swap(order[i], order[i + rng.below(n - i)]);
      labels[order[i]] ^= 1;
    }
    const auto ones = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Bit{1}));
    if (!usable || ones == 0 || ones == n) continue;

    std::vector<FeatureSpec> features;
    for (std::size_t j = 0; j < m; ++j) features.push_back({"f" + std::to_string(j), FeatureKind::quantitative, j});
    return PlantedDataset{Dataset(std::move(features), std::move(rows), std::move(labels)), std::move(rule),
                          threshold, std::move(hidden), std::move(clean)};
  }
  throw std::runtime_error("could not draw a planted dataset with both classes present");
}

std::size_t zero_error_chain_depth(const std::vector<BitVector>& columns, std::span<const std::size_t> errors,
                                   std::span<const Bit> labels, std::size_t max_depth, bool extended_catalog) {
  const std::size_t n = labels.size();
  if (n > 64) throw std::invalid_argument("chain search supports at most 64 rows");
  auto pack = [n](std::span<const Bit> v) {
    std::uint64_t w = 0;
    for (std::size_t t = 0; t < n; ++t) w |= std::uint64_t{v[t] & 1u} << t;
    return w;
  };
  const std::uint64_t target = pack(labels);
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> cols;
  for (const auto& c : columns) cols.push_back(pack(c));

  std::vector<int> fns;
  for (const Row& r : kTruth) {
    if (extended_catalog || r.id != 1) fns.push_back(r.id);
  }
  // Each output row is the OR over the truth-table entries that are 1 of the rows matching that input pair.
  auto apply = [&](int fn, std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (*truth(fn, 0, 0)) out |= ~a & ~b;
    if (*truth(fn, 0, 1)) out |= ~a & b;
    if (*truth(fn, 1, 0)) out |= a & ~b;
    if (*truth(fn, 1, 1)) out |= a & b;
    return out & mask;
  };
  auto err = [&](std::uint64_t w) { return static_cast<std::size_t>(__builtin_popcountll((w ^ target) & mask)); };

  std::unordered_map<std::uint64_t, std::size_t> level;
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (a == b) continue;
      for (int fn : fns) {
        const std::uint64_t out = apply(fn, cols[a], cols[b]);
        const std::size_t e = err(out);
        if (e <= errors[a] && e <= errors[b]) level.emplace(out, e);
      }
    }
  }
  for (std::size_t depth = 1; depth <= max_depth && !level.empty(); ++depth) {
    if (level.contains(target)) return depth;
    if (depth == max_depth) break;
    std::unordered_map<std::uint64_t, std::size_t> next;
    for (const auto& [out, e] : level) {
      for (std::size_t b = 0; b < cols.size(); ++b) {
        for (int fn : fns) {
          const std::uint64_t child = apply(fn, out, cols[b]);
          const std::size_t ce = err(child);
          if (child != out && ce <= e && ce <= errors[b]) next.emplace(child, ce);
        }
      }
    }
    if (next.empty()) break;
    auto min_of = [](const auto& lv) {
      std::size_t m = SIZE_MAX;
      for (const auto& [out, e] : lv) m = std::min(m, e);
      return m;
    };
    // A level whose best unit is worse than the previous best ends the growth.
    if (min_of(next) > min_of(level)) break;
    level = std::move(next);
  }
  return 0;
}

}  // namespace logicnet::oracle
