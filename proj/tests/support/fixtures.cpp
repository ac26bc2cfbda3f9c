#include "fixtures.hpp"

#include <cmath>

namespace rnpv::testing {

LoanModel reference_model(MarketState initial) {
  constexpr int n = 60;
  return LoanModel{
      LoanSpec::level(8500.0, 190.0, n),
      MarketModel::homogeneous(initial, 0.92, 0.96, n),
      HazardModel::homogeneous(n, 0.006, 0.003, 0.008, 0.010),
      RecoveryModel::constant(n, RecoveryLaw::from_mean_sd(0.25, 0.20),
                              RecoveryLaw::from_mean_sd(0.40, 0.20))};
}

LoanModel riskless_model(MarketState initial) {
  LoanModel m = reference_model(initial);
  m.hazards = HazardModel::homogeneous(m.term(), 0.0, 0.0, 0.0, 0.0);
  return m;
}

LoanModel random_model(std::mt19937_64& rng, int max_term) {
  std::uniform_int_distribution<int> term_dist(1, max_term);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const int n = term_dist(rng);
  const auto size = static_cast<std::size_t>(n);
  std::vector<double> instalments(size);
  for (auto& r : instalments) r = between(50.0, 500.0);
  const double x = between(0.002, 0.03);
  double principal = 0.0;
  for (int h = 1; h <= n; ++h) principal += instalments[size_t(h - 1)] / std::pow(1.0 + x, h);
  std::vector<double> charges(size - 1);
  for (auto& c : charges) c = between(1.0, 1.05);

  const bool homogeneous = unit(rng) < 0.3;
  const double b0 = unit(rng);
  const double g0 = unit(rng);
  std::vector<double> b(size), g(size);
  for (std::size_t i = 0; i < size; ++i) {
    b[i] = homogeneous ? b0 : unit(rng);
    g[i] = homogeneous ? g0 : unit(rng);
  }

  std::vector<double> lb(size), lg(size), mb(size - 1), mg(size - 1);
  for (auto& v : lb) v = between(0.0, 0.2);
  for (auto& v : lg) v = between(0.0, 0.2);
  for (auto& v : mb) v = between(0.0, 0.2);
  for (auto& v : mg) v = between(0.0, 0.2);

  auto law = [&] {
    const double mean = between(0.05, 0.95);
    const double sd = between(0.05, 0.9) * std::sqrt(mean * (1.0 - mean));
    return RecoveryLaw::from_mean_sd(mean, sd);
  };
  std::vector<RecoveryLaw> zb, zg;
  for (std::size_t i = 0; i < size; ++i) {
    zb.push_back(law());
    zg.push_back(law());
  }

  const MarketState initial = unit(rng) < 0.5 ? MarketState::bad : MarketState::good;
  return LoanModel{LoanSpec(principal, instalments, charges), MarketModel(initial, b, g),
                   HazardModel(lb, lg, mb, mg), RecoveryModel(zb, zg)};
}

DiscountSpec random_discount(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 0.15);
  return DiscountSpec::from_annual(d(rng));
}

}  // namespace rnpv::testing
