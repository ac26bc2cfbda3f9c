#pragma once

#include "rnpv/behavior_model.hpp"
#include "rnpv/loan_schedule.hpp"
#include "rnpv/market_chain.hpp"

namespace rnpv {

// A complete single-loan parameterization. The market's initial state is ignored by
// the analytic engines, which always report both initial states.
struct LoanModel {
  LoanSpec loan;
  MarketModel market;
  HazardModel hazards;
  RecoveryModel recovery;

  // Throws ValidationError if horizons of the blocks do not cover the loan term.
  void validate() const;
  int term() const { return loan.term(); }
};

// First two moments of a scalar random quantity.
struct ValueMoments {
  double mean = 0.0;
  double second = 0.0;

  double variance() const { return second - mean * mean; }
  double sd() const;
};

}  // namespace rnpv
