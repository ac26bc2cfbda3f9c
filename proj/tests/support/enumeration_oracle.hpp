#pragma once

#include "rnpv/model.hpp"

namespace rnpv::testing {

// Brute-force moments for small terms (n <= ~10): every market path S_0..S_{n-1} is
// listed with its probability, and for each path every joint combination of exit
// outcomes of the loans involved. Recovery enters only through its first two moments.
// Independent of the at-risk recursion and of the backward recursion.
struct EnumeratedMoments {
  double mean_v = 0.0;     // E[V_s(0)]
  double second_v = 0.0;   // E[V_s(0)^2]
  double cross_r = 0.0;    // E[R_{s,1}(0) R_{s,2}(0)] from pair enumeration
  double mean_r = 0.0;     // E[R_s(0)]
};

EnumeratedMoments enumerate_moments(const LoanModel& model, const DiscountSpec& discount,
                                    MarketState initial);

// Var[sum of m loans' V] by joint enumeration of m exit processes on each path (m <= 3).
double enumerate_portfolio_variance(const LoanModel& model, const DiscountSpec& discount,
                                    MarketState initial, int m);

}  // namespace rnpv::testing
