#pragma once

#include <vector>

#include "rnpv/market_state.hpp"
#include "rnpv/model.hpp"

namespace rnpv {

// Q_{s,c}(h): probability that a loan started in state s is still at risk at time h
// with the market in state c, for h = 0..n-1.
class AtRiskTable {
 public:
  explicit AtRiskTable(int term);

  int term() const { return term_; }
  double at(MarketState initial, MarketState current, int h) const;
  double& at(MarketState initial, MarketState current, int h);

 private:
  int term_;
  std::array<std::array<std::vector<double>, 2>, 2> q_;
};

AtRiskTable compute_at_risk(const LoanModel& model);

// Distribution of the 3n-event partition for each initial state:
// regular repayment E_s, default A_{s,B}(h) and A_{s,G}(h) for h = 1..n,
// prepayment C_s(h) for h = 1..n-1.
class EventDistribution {
 public:
  explicit EventDistribution(int term);

  int term() const { return term_; }

  double regular(MarketState initial) const { return regular_[initial]; }
  double default_in(MarketState initial, MarketState state, int h) const;
  double prepayment(MarketState initial, int h) const;

  // Number of atoms per initial state (3n).
  int atom_count() const { return 3 * term_; }
  double total_mass(MarketState initial) const;

  // Probabilities in canonical atom order:
  // [E, A_B(1..n), A_G(1..n), C(1..n-1)].
  std::vector<double> atoms(MarketState initial) const;

 private:
  friend EventDistribution event_probabilities(const AtRiskTable&, const HazardModel&);

  int term_;
  PerState<double> regular_;
  PerState<std::array<std::vector<double>, 2>> default_;  // [initial][state][h-1]
  PerState<std::vector<double>> prepay_;                  // [initial][h-1], size n-1
};

// Throws ConsistencyError if the mass of either initial state misses 1 by more than 1e-9.
EventDistribution event_probabilities(const AtRiskTable& at_risk, const HazardModel& hazards);

// Canonical atom index helpers, shared with the Monte Carlo event counter.
namespace atom {
constexpr int regular() { return 0; }
constexpr int default_at(MarketState s, int h, int term) {
  return 1 + static_cast<int>(index_of(s)) * term + (h - 1);
}
constexpr int prepay_at(int h, int term) { return 1 + 2 * term + (h - 1); }
}  // namespace atom

// E[V_s(0)] and E[V_s(0)^2] for both initial states from the event distribution.
PerState<ValueMoments> moments_forward(const LoanSpec& loan, const DiscountSpec& discount,
                                       const EventDistribution& events,
                                       const RecoveryModel& recovery);

// Convenience: the whole forward pipeline.
PerState<ValueMoments> forward_value_moments(const LoanModel& model,
                                             const DiscountSpec& discount);

}  // namespace rnpv
