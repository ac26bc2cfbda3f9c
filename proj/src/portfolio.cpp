#include "rnpv/portfolio.hpp"

#include <cmath>
#include <limits>

#include "rnpv/error.hpp"

namespace rnpv {

SingleLoanStats SingleLoanStats::from_moments(const StateMoments& at_zero, double principal) {
  return {at_zero.mean - principal, at_zero.variance(), at_zero.covariance()};
}

double SingleLoanStats::sd() const { return variance > 0.0 ? std::sqrt(variance) : 0.0; }

double SingleLoanStats::correlation() const {
  return variance > 0.0 ? covariance / variance : 0.0;
}

PortfolioStats portfolio_moments(const SingleLoanStats& single, long long size) {
  if (size < 1) throw ValidationError("portfolio size must be at least 1");
  const auto m = static_cast<double>(size);
  PortfolioStats p;
  p.size = size;
  p.mean = m * single.mean;
  const double var = m * single.variance + m * (m - 1.0) * single.covariance;
  p.sd = var > 0.0 ? std::sqrt(var) : 0.0;
  p.cv = p.mean != 0.0 ? p.sd / p.mean : std::numeric_limits<double>::quiet_NaN();
  p.covariance = single.covariance;
  p.correlation = single.correlation();
  if (single.mean > 0.0) p.limit_cv = limit_cv(single);
  return p;
}

double limit_cv(const SingleLoanStats& single) {
  if (!(single.mean > 0.0)) {
    throw ValidationError("limit CV undefined for nonpositive expected value");
  }
  // Covariance is a difference of two O(R^2) numbers; tolerate rounding below zero.
  const double noise = 1e-12 * (single.variance + single.mean * single.mean);
  if (single.covariance < -noise) {
    throw ValidationError("limit CV undefined for negative covariance");
  }
  return single.covariance > 0.0 ? std::sqrt(single.covariance) / single.mean : 0.0;
}

}  // namespace rnpv
