#include "rnpv/market_state.hpp"

namespace rnpv {

std::optional<MarketState> parse_market_state(std::string_view text) {
  if (text == "B" || text == "bad") return MarketState::bad;
  if (text == "G" || text == "good") return MarketState::good;
  return std::nullopt;
}

}  // namespace rnpv
