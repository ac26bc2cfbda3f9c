#pragma once

#include <vector>

#include "rnpv/market_state.hpp"
#include "rnpv/model.hpp"

namespace rnpv {

// Conditional moments of R_s(h), the value at h of the instalments r_{h+1}..r_n actually
// received given S_h = s, together with the covariance of two exchangeable loans
// that share the market path.
struct StateMoments {
  double mean = 0.0;    // E[R_s(h)]
  double var = 0.0;     // Var[R_s(h)]
  double cov = 0.0;     // Cov[R_{s,1}(h), R_{s,2}(h)]

  double variance() const { return var; }
  double second() const { return var + mean * mean; }
  double covariance() const { return cov; }
  // E[R_{s,1}(h) R_{s,2}(h)]
  double cross() const { return cov + mean * mean; }
};

using MomentSet = PerState<StateMoments>;

// Moments at h = n-1 (one period before maturity).
MomentSet terminal_moments(const LoanModel& model, const DiscountSpec& discount);

// One backward step: moments at h-1 from moments at h. `next` is all zeros at h = n.
MomentSet backward_step(const LoanModel& model, const DiscountSpec& discount, int h,
                        const MomentSet& next);

// Moments at h = 0. Single O(n) pass with O(1) state.
MomentSet backward_moments(const LoanModel& model, const DiscountSpec& discount);

// Moments for every h = 0..n-1; element h holds the set at time h.
std::vector<MomentSet> backward_moment_table(const LoanModel& model,
                                             const DiscountSpec& discount);

// V_s(0) = R_s(0) - w
PerState<ValueMoments> value_moments(const MomentSet& at_zero, double principal);

}  // namespace rnpv
