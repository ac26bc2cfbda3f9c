#include "rnpv/forward_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

constexpr double kMassTolerance = 1e-9;

}  // namespace

AtRiskTable::AtRiskTable(int term) : term_(term) {
  for (auto& by_initial : q_) {
    for (auto& column : by_initial) column.assign(static_cast<std::size_t>(term), 0.0);
  }
}

double AtRiskTable::at(MarketState initial, MarketState current, int h) const {
  if (h < 0 || h >= term_) throw std::out_of_range("AtRiskTable: time out of range");
  return q_[index_of(initial)][index_of(current)][static_cast<std::size_t>(h)];
}

double& AtRiskTable::at(MarketState initial, MarketState current, int h) {
  if (h < 0 || h >= term_) throw std::out_of_range("AtRiskTable: time out of range");
  return q_[index_of(initial)][index_of(current)][static_cast<std::size_t>(h)];
}

AtRiskTable compute_at_risk(const LoanModel& model) {
  model.validate();
  const int n = model.term();
  const auto& hz = model.hazards;
  const auto& mk = model.market;
  constexpr auto B = MarketState::bad;
  constexpr auto G = MarketState::good;

  AtRiskTable table(n);
  for (MarketState s : kMarketStates) {
    table.at(s, s, 0) = 1.0;
    for (int h = 1; h < n; ++h) {
      // Survive period h in the state S_{h-1}, then move to S_h.
      const double stay_b = table.at(s, B, h - 1) * hz.survival(B, h);
      const double stay_g = table.at(s, G, h - 1) * hz.survival(G, h);
      const double b = mk.persistence(B, h);
      const double g = mk.persistence(G, h);
      table.at(s, B, h) = stay_b * b + stay_g * (1.0 - g);
      table.at(s, G, h) = stay_g * g + stay_b * (1.0 - b);
    }
  }
  return table;
}

EventDistribution::EventDistribution(int term) : term_(term) {
  for (MarketState s : kMarketStates) {
    for (auto& v : default_[s]) v.assign(static_cast<std::size_t>(term), 0.0);
    prepay_[s].assign(static_cast<std::size_t>(term - 1), 0.0);
  }
}

double EventDistribution::default_in(MarketState initial, MarketState state, int h) const {
  if (h < 1 || h > term_) throw std::out_of_range("default_in: month out of range");
  return default_[initial][index_of(state)][static_cast<std::size_t>(h - 1)];
}

double EventDistribution::prepayment(MarketState initial, int h) const {
  if (h < 1 || h >= term_) throw std::out_of_range("prepayment: month out of range");
  return prepay_[initial][static_cast<std::size_t>(h - 1)];
}

double EventDistribution::total_mass(MarketState initial) const {
  double mass = regular_[initial];
  for (const auto& v : default_[initial]) {
    for (double p : v) mass += p;
  }
  for (double p : prepay_[initial]) mass += p;
  return mass;
}

std::vector<double> EventDistribution::atoms(MarketState initial) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(atom_count()));
  out.push_back(regular_[initial]);
  for (const auto& v : default_[initial]) out.insert(out.end(), v.begin(), v.end());
  out.insert(out.end(), prepay_[initial].begin(), prepay_[initial].end());
  return out;
}

EventDistribution event_probabilities(const AtRiskTable& at_risk, const HazardModel& hazards) {
  const int n = at_risk.term();
  if (hazards.term() != n) throw ValidationError("hazards: term does not match at-risk table");

  EventDistribution dist(n);
  for (MarketState s : kMarketStates) {
    for (MarketState c : kMarketStates) {
      auto& col = dist.default_[s][index_of(c)];
      for (int h = 1; h <= n; ++h) {
        col[static_cast<std::size_t>(h - 1)] =
            at_risk.at(s, c, h - 1) * hazards.default_intensity(c, h);
      }
    }
    for (int h = 1; h < n; ++h) {
      double p = 0.0;
      for (MarketState c : kMarketStates) {
        p += at_risk.at(s, c, h - 1) * hazards.prepay_intensity(c, h);
      }
      dist.prepay_[s][static_cast<std::size_t>(h - 1)] = p;
    }
    double regular = 0.0;
    for (MarketState c : kMarketStates) {
      regular += at_risk.at(s, c, n - 1) * (1.0 - hazards.default_intensity(c, n));
    }
    dist.regular_[s] = regular;

    const double residual = std::abs(dist.total_mass(s) - 1.0);
    if (residual > kMassTolerance) {
      throw ConsistencyError("event probabilities do not sum to 1 (residual " +
                             std::to_string(residual) + ")");
    }
  }
  return dist;
}

PerState<ValueMoments> moments_forward(const LoanSpec& loan, const DiscountSpec& discount,
                                       const EventDistribution& events,
                                       const RecoveryModel& recovery) {
  const int n = loan.term();
  if (events.term() != n || recovery.term() != n) {
    throw ValidationError("moments_forward: term mismatch");
  }
  const auto pay = PayoffSchedule::build(loan, discount);
  const double w = loan.principal();

  PerState<ValueMoments> out;
  for (MarketState s : kMarketStates) {
    double m1 = 0.0;
    double m2 = 0.0;
    auto add_branch = [&](double p, double mean, double second) {
      m1 += p * mean;
      m2 += p * second;
    };

    const double full = pay.paid_annuity[static_cast<std::size_t>(n)] - w;
    add_branch(events.regular(s), full, full * full);

    for (int h = 1; h <= n; ++h) {
      const auto i = static_cast<std::size_t>(h);
      const double before = pay.paid_annuity[i - 1] - w;
      const double at_risk = pay.discount[i] * pay.exposure[i];
      // Default: V = before + at_risk * Z.
      for (MarketState c : kMarketStates) {
        const auto& z = recovery.moments(c, h);
        add_branch(events.default_in(s, c, h), before + at_risk * z.mean,
                   before * before + 2.0 * before * at_risk * z.mean + at_risk * at_risk * z.second);
      }
      if (h < n) {
        const double prepaid = before + at_risk * pay.charge[i];
        add_branch(events.prepayment(s, h), prepaid, prepaid * prepaid);
      }
    }
    out[s] = {m1, m2};
  }
  return out;
}

PerState<ValueMoments> forward_value_moments(const LoanModel& model,
                                             const DiscountSpec& discount) {
  const auto at_risk = compute_at_risk(model);
  const auto events = event_probabilities(at_risk, model.hazards);
  return moments_forward(model.loan, discount, events, model.recovery);
}

}  // namespace rnpv
