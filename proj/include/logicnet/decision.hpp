#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "logicnet/logic.hpp"

namespace logicnet {

/// Outcome of an M-of-N vote. A syndrome outputting 0 votes for class 0, rendered "+M";
/// one outputting 1 votes for class 1, rendered "-M". Equal votes are contradictory.
struct SignedDecision {
  std::size_t votes0 = 0;
  std::size_t votes1 = 0;

  static SignedDecision from_votes(std::size_t ones, std::size_t total) { return {total - ones, ones}; }

  std::size_t total() const noexcept { return votes0 + votes1; }
  /// M: votes for the winning class (either count when contradictory).
  std::size_t winner_votes() const noexcept { return votes0 > votes1 ? votes0 : votes1; }
  bool contradictory() const noexcept { return votes0 == votes1; }
  std::optional<Bit> label() const noexcept {
    if (contradictory()) return std::nullopt;
    return votes1 > votes0 ? Bit{1} : Bit{0};
  }
  /// +M for class 0, -M for class 1, 0 when contradictory.
  long value() const noexcept {
    if (contradictory()) return 0;
    return votes0 > votes1 ? static_cast<long>(votes0) : -static_cast<long>(votes1);
  }
  double confidence() const noexcept { return total() ? double(winner_votes()) / double(total()) : 0.0; }
  double membership(Bit cls) const noexcept {
    return total() ? double(cls ? votes1 : votes0) / double(total()) : 0.0;
  }

  friend bool operator==(const SignedDecision&, const SignedDecision&) = default;
};

/// "+6", "-12", or "±0".
std::string format_signed(long value);

/// "+6 (6/9)" or "0/10 (contradictory)".
std::string to_string(const SignedDecision& d);

}  // namespace logicnet
