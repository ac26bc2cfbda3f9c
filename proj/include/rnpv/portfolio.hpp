#pragma once

#include <optional>

#include "rnpv/backward_engine.hpp"

namespace rnpv {

// Single-loan inputs to portfolio aggregation for one initial state.
struct SingleLoanStats {
  double mean = 0.0;        // E[V_s(0)]
  double variance = 0.0;    // V[R_s(0)]
  double covariance = 0.0;  // Cov[R_{s,1}(0), R_{s,2}(0)]

  static SingleLoanStats from_moments(const StateMoments& at_zero, double principal);

  double sd() const;
  // Cov / V, the linear correlation of two loans of the portfolio.
  double correlation() const;
};

// RNPV of m exchangeable loans, Psi_{s,m}(0) = sum_i V_{s,i}(0).
struct PortfolioStats {
  long long size = 0;
  double mean = 0.0;
  double sd = 0.0;
  double cv = 0.0;
  double covariance = 0.0;
  double correlation = 0.0;
  std::optional<double> limit_cv;  // empty when E[V_s(0)] <= 0
};

PortfolioStats portfolio_moments(const SingleLoanStats& single, long long size);

// lim_{m->inf} Sd/E = sqrt(Cov) / E[V_s(0)].
// Throws ValidationError for a nonpositive mean or a materially negative covariance.
double limit_cv(const SingleLoanStats& single);

}  // namespace rnpv
