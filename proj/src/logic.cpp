#include "logicnet/logic.hpp"

#include <algorithm>

#include "logicnet/errors.hpp"

namespace logicnet {

namespace {

std::vector<LogicFunction> printed_functions() {
  return {
      {FunctionId{0}, {0, 0, 0, 1}, "a & b"},
      {FunctionId{3}, {0, 1, 0, 0}, "!a & b"},
      {FunctionId{5}, {0, 1, 1, 0}, "a ^ b"},
      {FunctionId{6}, {0, 1, 1, 1}, "a | b"},
      {FunctionId{7}, {1, 0, 0, 0}, "!(a | b)"},
      {FunctionId{8}, {1, 0, 0, 1}, "!(a ^ b)"},
      {FunctionId{10}, {1, 0, 1, 1}, "a | !b"},
      {FunctionId{12}, {1, 1, 0, 1}, "!a | b"},
      {FunctionId{13}, {1, 1, 1, 0}, "!(a & b)"},
  };
}

}  // namespace

const Catalog& Catalog::standard() {
  static const Catalog instance(printed_functions());
  return instance;
}

const Catalog& Catalog::extended() {
  static const Catalog instance = [] {
    auto fns = printed_functions();
    fns.insert(fns.begin() + 1, LogicFunction{FunctionId{1}, {0, 0, 1, 0}, "a & !b"});
    return Catalog(std::move(fns));
  }();
  return instance;
}

bool Catalog::contains(FunctionId id) const noexcept {
  return std::ranges::any_of(functions_, [id](const LogicFunction& f) { return f.id == id; });
}

const LogicFunction& Catalog::at(FunctionId id) const {
  auto it = std::ranges::find(functions_, id, &LogicFunction::id);
  if (it == functions_.end()) {
    throw CatalogMiss("unknown logic function " + to_string(id));
  }
  return *it;
}

std::span<const LogicFunction> catalog(const Catalog& cat) { return cat.functions(); }

Bit eval_fn(FunctionId id, Bit u1, Bit u2, const Catalog& cat) { return cat.at(id)(u1 & 1, u2 & 1); }

BitVector eval_vector(FunctionId id, std::span<const Bit> u1, std::span<const Bit> u2,
                      const Catalog& cat) {
  if (u1.size() != u2.size()) {
    throw DimensionError("operand lengths differ: " + std::to_string(u1.size()) + " vs " +
                         std::to_string(u2.size()));
  }
  const LogicFunction& fn = cat.at(id);
  BitVector out(u1.size());
  for (std::size_t t = 0; t < u1.size(); ++t) {
    out[t] = fn(u1[t], u2[t]);
  }
  return out;
}

std::size_t hamming(std::span<const Bit> a, std::span<const Bit> b) {
  if (a.size() != b.size()) {
    throw DimensionError("hamming: length mismatch");
  }
  std::size_t d = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    d += (a[t] != b[t]);
  }
  return d;
}

std::string to_string(FunctionId id) { return "g" + std::to_string(id.value); }

}  // namespace logicnet
