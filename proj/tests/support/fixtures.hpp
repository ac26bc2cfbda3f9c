#pragma once

#include <random>

#include "rnpv/model.hpp"

namespace rnpv::testing {

// The 60-month level loan used throughout the examples: w = 8500, r = 190,
// b = 0.92, g = 0.96, default 0.006 / 0.003, prepayment 0.008 / 0.010,
// recovery B mean 0.25 sd 0.20, G mean 0.40 sd 0.20 (beta), no prepayment charge.
LoanModel reference_model(MarketState initial = MarketState::bad);

// Same loan with every intensity set to zero.
LoanModel riskless_model(MarketState initial = MarketState::bad);

// A random feasible parameterization with term in [1, max_term]. Persistence,
// intensities and recovery laws vary by month; recovery laws are beta (samplable).
LoanModel random_model(std::mt19937_64& rng, int max_term);

// A random evaluation rate in [0, 0.15] annual.
DiscountSpec random_discount(std::mt19937_64& rng);

}  // namespace rnpv::testing
