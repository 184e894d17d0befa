#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logicnet/decision.hpp"
#include "logicnet/encoding.hpp"
#include "logicnet/logic.hpp"

namespace logicnet {

class Network;

/// A feature as declared in a model file: its x-index plus how raw values encode.
struct FeatureDecl {
  std::size_t index = 0;
  Encoder encoder;

  const std::string& name() const noexcept { return encoder.feature; }
};

/// One formula row `i j k l`: unit i of its layer computes g_j(k, l). In the first layer k and
/// l are feature indices; later, k is a unit id of the previous layer and l a feature index.
struct FormulaRow {
  std::size_t id = 0;
  FunctionId fn;
  std::size_t left = 0;
  std::size_t right = 0;

  friend bool operator==(const FormulaRow&, const FormulaRow&) = default;
};

/// Parsed model file. The rows of the last layer are the syndromes.
///
/// Text grammar, one item per line:
///
///     # comment             (leading comment lines are kept and re-printed)
///     classes <name0> <name1>
///     feature <name> x=<index> kind=<kind> [u=<real>] [category=<text>] h=<bit> [e=<int>] [degenerate]
///     layer <r>             (r = 1, 2, ... in order)
///     <i> <j> <k> <l>
///
/// Names and values containing blanks are double-quoted.
struct FormulaTable {
  std::vector<std::string> comments;
  std::array<std::string, 2> class_names{"0", "1"};
  std::vector<FeatureDecl> features;
  std::vector<std::vector<FormulaRow>> layers;

  const FeatureDecl* find_feature(std::size_t index) const;
};

/// Throws ModelError (with line number) on malformed text, unknown function ids, undeclared
/// features, dangling unit references and duplicate ids.
FormulaTable parse_formula_table(std::string_view text);
std::string print_formula_table(const FormulaTable& table);

/// Units the syndromes depend on, with their network ids; all encoders are declared.
FormulaTable to_formula_table(const Network& net);
std::string formula_text(const Network& net);

/// N syndromes as expression trees over encoded features, decided by M-of-N vote.
/// Shared subexpressions are stored once.
class SyndromeComplex {
 public:
  struct Node {
    enum class Kind { feature, function };
    Kind kind = Kind::feature;
    /// Position in `features()` for a feature leaf.
    std::size_t slot = 0;
    FunctionId fn;
    std::size_t left = 0;
    std::size_t right = 0;
  };

  SyndromeComplex(std::vector<Node> nodes, std::vector<std::size_t> roots, std::vector<FeatureDecl> features,
                  std::array<std::string, 2> class_names);

  /// N.
  std::size_t size() const noexcept { return roots_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& roots() const noexcept { return roots_; }
  /// Referenced features, ascending by index.
  const std::vector<FeatureDecl>& features() const noexcept { return features_; }
  const std::array<std::string, 2>& class_names() const noexcept { return class_names_; }

  /// Slot of a feature given by name, or by "x<index>" when no name matches.
  std::optional<std::size_t> find_feature(std::string_view token) const;

  /// `bits[s]` is the encoded value of `features()[s]`.
  SignedDecision evaluate(std::span<const Bit> bits) const;
  /// Assignment keyed by feature index; throws EvaluationError when one is unassigned.
  SignedDecision evaluate(const std::map<std::size_t, Bit>& by_index) const;
  Bit evaluate_syndrome(std::size_t s, std::span<const Bit> bits) const;

  /// Encodes named raw values with each feature's encoder, then evaluates.
  SignedDecision classify(const std::map<std::string, std::string, std::less<>>& row) const;

  /// e.g. "g0(g12(anhelation, leukocytes), articular)".
  std::string expression(std::size_t s) const;

 private:
  Bit eval_node(std::size_t node, std::span<const Bit> bits) const;

  std::vector<Node> nodes_;
  std::vector<std::size_t> roots_;
  std::vector<FeatureDecl> features_;
  std::array<std::string, 2> class_names_;
};

SyndromeComplex make_complex(const FormulaTable& table);
SyndromeComplex extract(const Network& net);

/// (N_1, N) with N_1 = floor(N/2) + 1, the smallest strict majority.
std::pair<std::size_t, std::size_t> decision_levels(const SyndromeComplex& sc);

}  // namespace logicnet
