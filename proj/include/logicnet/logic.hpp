#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logicnet {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

/// Catalog label of a 2-input Boolean function. Ids are opaque and appear verbatim in model files.
struct FunctionId {
  int value = 0;
  friend constexpr auto operator<=>(FunctionId, FunctionId) = default;
};

struct LogicFunction {
  FunctionId id;
  /// Output for input pairs (0,0), (0,1), (1,0), (1,1).
  std::array<Bit, 4> truth;
  /// Infix rendering with operands `a` (first) and `b` (second).
  std::string_view infix;

  constexpr Bit operator()(Bit u1, Bit u2) const noexcept { return truth[(u1 << 1) | u2]; }
};

/// Immutable set of neuron functions. `standard()` holds the nine printed functions;
/// `extended()` adds g1 = a AND NOT b, which closes the set under negation.
class Catalog {
 public:
  static const Catalog& standard();
  static const Catalog& extended();

  std::span<const LogicFunction> functions() const noexcept { return functions_; }
  std::size_t size() const noexcept { return functions_.size(); }
  bool contains(FunctionId id) const noexcept;
  /// Throws CatalogMiss.
  const LogicFunction& at(FunctionId id) const;

 private:
  explicit Catalog(std::vector<LogicFunction> functions) : functions_(std::move(functions)) {}
  std::vector<LogicFunction> functions_;
};

/// Ordered (ascending id) list of the functions in `cat`.
std::span<const LogicFunction> catalog(const Catalog& cat = Catalog::standard());

Bit eval_fn(FunctionId id, Bit u1, Bit u2, const Catalog& cat = Catalog::standard());

/// Element-wise application; throws DimensionError on length mismatch.
BitVector eval_vector(FunctionId id, std::span<const Bit> u1, std::span<const Bit> u2,
                      const Catalog& cat = Catalog::standard());

/// Number of positions where `a` and `b` differ. Lengths must match.
std::size_t hamming(std::span<const Bit> a, std::span<const Bit> b);

std::string to_string(FunctionId id);

}  // namespace logicnet
