#include "logicnet/decision.hpp"

namespace logicnet {

std::string format_signed(long value) {
  if (value == 0) return "±0";
  return (value > 0 ? "+" : "") + std::to_string(value);
}

std::string to_string(const SignedDecision& d) {
  if (d.contradictory()) {
    return "0/" + std::to_string(d.total()) + " (contradictory)";
  }
  return format_signed(d.value()) + " (" + std::to_string(d.winner_votes()) + "/" + std::to_string(d.total()) + ")";
}

}  // namespace logicnet
