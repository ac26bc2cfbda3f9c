#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace rnpv {

// Credit-market condition. Only two regimes are modelled.
enum class MarketState : std::uint8_t { bad = 0, good = 1 };

inline constexpr std::array<MarketState, 2> kMarketStates{MarketState::bad,
                                                          MarketState::good};

constexpr std::size_t index_of(MarketState s) { return static_cast<std::size_t>(s); }

constexpr MarketState other(MarketState s) {
  return s == MarketState::bad ? MarketState::good : MarketState::bad;
}

constexpr char symbol(MarketState s) { return s == MarketState::bad ? 'B' : 'G'; }

constexpr std::string_view name(MarketState s) {
  return s == MarketState::bad ? "bad" : "good";
}

// Accepts "B", "G", "bad", "good" (case-sensitive).
std::optional<MarketState> parse_market_state(std::string_view text);

// A pair of values indexed by market state.
template <class T>
struct PerState {
  std::array<T, 2> values{};

  constexpr T& operator[](MarketState s) { return values[index_of(s)]; }
  constexpr const T& operator[](MarketState s) const { return values[index_of(s)]; }

  friend bool operator==(const PerState&, const PerState&) = default;
};

}  // namespace rnpv
