#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rnpv/market_state.hpp"
#include "rnpv/rng.hpp"

namespace rnpv {

using TransitionMatrix = std::array<std::array<double, 2>, 2>;

// Two-state Markov chain of credit-market conditions.
//
// persistence(B, h) = b(h) = P(S_h = B | S_{h-1} = B) and likewise g(h) for G.
// The state in force during period h (the interval [h-1, h)) is S_{h-1}.
class MarketModel {
 public:
  MarketModel(MarketState initial, std::vector<double> persist_bad,
              std::vector<double> persist_good);

  static MarketModel homogeneous(MarketState initial, double persist_bad,
                                 double persist_good, int horizon);

  MarketState initial_state() const { return initial_; }
  MarketModel with_initial_state(MarketState s) const;

  // Number of transitions covered by the persistence sequences.
  int horizon() const { return static_cast<int>(persist_bad_.size()); }

  double persistence(MarketState s, int h) const;
  bool is_homogeneous() const;

  // Rows/columns ordered (B, G).
  TransitionMatrix transition_matrix(int h) const;

  // Mean length of a run in `s`, 1 / (1 - persistence). Homogeneous chains only.
  double expected_sojourn(MarketState s) const;

  // S_0..S_horizon starting from initial_state(). One uniform per transition;
  // `mirrored` replaces every uniform u by 1-u (antithetic path).
  std::vector<MarketState> sample_path(int horizon, StreamRng& rng, bool mirrored = false) const;
  std::vector<MarketState> sample_path(int horizon, std::uint64_t seed) const;

 private:
  MarketState initial_;
  std::vector<double> persist_bad_;
  std::vector<double> persist_good_;
};

// Stationary law (pi_B, pi_G) of a homogeneous chain. Requires b + g < 2.
PerState<double> stationary_distribution(double persist_bad, double persist_good);

}  // namespace rnpv
