#include "rnpv/backward_engine.hpp"

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

MomentSet step(const LoanModel& model, const DiscountSpec& discount, int h, double phi,
               const MomentSet& next) {
  const int n = model.term();
  const double v = discount.monthly_factor();
  const double v2 = v * v;
  const double r = model.loan.instalment(h);
  const double gamma = h < n ? model.loan.prepayment_charge(h) : 1.0;
  // No transition is needed after maturity; next is zero there anyway.
  const bool has_next = h < n;

  MomentSet out;
  for (MarketState s : kMarketStates) {
    const MarketState o = other(s);
    const double lambda = model.hazards.default_intensity(s, h);
    const double mu = model.hazards.prepay_intensity(s, h);
    const double q = model.hazards.survival(s, h);
    const double stay = has_next ? model.market.persistence(s, h) : 1.0;
    const auto& z = model.recovery.moments(s, h);

    // Continuation given survival: r_h plus the value carried into S_h.
    const double next_mean = stay * next[s].mean + (1.0 - stay) * next[o].mean;
    const double next_cov = stay * next[s].cov + (1.0 - stay) * next[o].cov;
    const double cont_mean = r + next_mean;

    // Exit payoff (default or prepayment) as a sub-probability mean.
    const double exit_mean = lambda * phi * z.mean + mu * gamma * phi;
    const double total = exit_mean + q * cont_mean;

    // Centered second moment over the three branches and the next state.
    auto dev2 = [total](double x) { return (x - total) * (x - total); };
    const double spread_next = stay * (next[s].var + dev2(r + next[s].mean)) +
                               (1.0 - stay) * (next[o].var + dev2(r + next[o].mean));
    out[s].mean = v * total;
    out[s].var = v2 * (lambda * (phi * phi * z.variance() + dev2(phi * z.mean)) +
                       mu * dev2(gamma * phi) + q * spread_next);
    // Two loans exit independently given the shared state, so only survivors covary:
    // through their common future (next_cov) and through the spread of the next state.
    const double gap = next[s].mean - next[o].mean;
    out[s].cov = v2 * q * q * (next_cov + stay * (1.0 - stay) * gap * gap);
  }
  return out;
}

}  // namespace

MomentSet backward_step(const LoanModel& model, const DiscountSpec& discount, int h,
                        const MomentSet& next) {
  if (h < 1 || h > model.term()) throw ValidationError("backward_step: month out of range");
  return step(model, discount, h, model.loan.exposure_at_default(h), next);
}

MomentSet terminal_moments(const LoanModel& model, const DiscountSpec& discount) {
  model.validate();
  const int n = model.term();
  const double v = discount.monthly_factor();
  const double rn = model.loan.instalment(n);
  MomentSet out;
  for (MarketState s : kMarketStates) {
    const double lambda = model.hazards.default_intensity(s, n);
    const auto& z = model.recovery.moments(s, n);
    out[s].mean = v * (lambda * rn * z.mean + (1.0 - lambda) * rn);
    const double second = v * v * (lambda * rn * rn * z.second + (1.0 - lambda) * rn * rn);
    out[s].var = second - out[s].mean * out[s].mean;
    out[s].cov = 0.0;
  }
  return out;
}

MomentSet backward_moments(const LoanModel& model, const DiscountSpec& discount) {
  model.validate();
  const auto phi = model.loan.exposure_profile();
  MomentSet m{};
  for (int h = model.term(); h >= 1; --h) {
    m = step(model, discount, h, phi[static_cast<std::size_t>(h - 1)], m);
  }
  return m;
}

std::vector<MomentSet> backward_moment_table(const LoanModel& model,
                                             const DiscountSpec& discount) {
  model.validate();
  const int n = model.term();
  std::vector<MomentSet> table(static_cast<std::size_t>(n));
  const auto phi = model.loan.exposure_profile();
  MomentSet m{};
  for (int h = n; h >= 1; --h) {
    m = step(model, discount, h, phi[static_cast<std::size_t>(h - 1)], m);
    table[static_cast<std::size_t>(h - 1)] = m;
  }
  return table;
}

PerState<ValueMoments> value_moments(const MomentSet& at_zero, double principal) {
  PerState<ValueMoments> out;
  for (MarketState s : kMarketStates) {
    const double mean = at_zero[s].mean - principal;
    out[s] = {mean, at_zero[s].var + mean * mean};
  }
  return out;
}

}  // namespace rnpv
