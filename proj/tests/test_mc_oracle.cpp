#include "rnpv/mc_oracle.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "rnpv/backward_engine.hpp"
#include "rnpv/error.hpp"
#include "rnpv/forward_engine.hpp"
#include "rnpv/portfolio.hpp"
#include "support/fixtures.hpp"

namespace rnpv {
namespace {

constexpr auto B = MarketState::bad;
constexpr auto G = MarketState::good;

TEST(SimConfig, Validation) {
  SimConfig c;
  c.replications = 1;
  EXPECT_THROW(c.validate(), ValidationError);
  c.replications = 11;
  c.antithetic = true;
  EXPECT_THROW(c.validate(), ValidationError);
  c.replications = 12;
  EXPECT_NO_THROW(c.validate());
}

TEST(SampleEstimate, ZScore) {
  EXPECT_DOUBLE_EQ((SampleEstimate{3.0, 0.5}).z_score(2.0), 2.0);
  EXPECT_EQ((SampleEstimate{3.0, 0.0}).z_score(3.0), 0.0);
  EXPECT_TRUE(std::isinf((SampleEstimate{3.0, 0.0}).z_score(2.0)));
}

TEST(Simulation, MeanWithinThreeStandardErrors) {
  const auto d = DiscountSpec::from_annual(0.05);
  for (auto s : kMarketStates) {
    const auto model = testing::reference_model(s);
    const auto exact = forward_value_moments(model, d)[s];
    const auto sim = simulate_single(model, d, {200000, 77, false, 0});
    EXPECT_LT(std::abs(sim.mean.z_score(exact.mean)), 3.0);
    EXPECT_LT(std::abs(sim.sd.z_score(exact.sd())), 4.0);
  }
}

TEST(Simulation, RisklessHasNoSpread) {
  const auto model = testing::riskless_model(G);
  const auto d = DiscountSpec::from_annual(0.04);
  const auto sim = simulate_single(model, d, {1000, 5, false, 0});
  EXPECT_NEAR(sim.mean.value, certain_npv(model.loan, d), 1e-8);
  EXPECT_NEAR(sim.sd.value, 0.0, 1e-8);
}

TEST(Simulation, CertainDefaultWithoutRecoveryLosesPrincipal) {
  auto model = testing::reference_model();
  std::vector<double> one(60, 1.0), none(59, 0.0);
  model.hazards = HazardModel(one, one, none, none);
  model.recovery = RecoveryModel::constant(60, RecoveryLaw::point(0.0), RecoveryLaw::point(0.0));
  const auto sim = simulate_single(model, DiscountSpec::from_annual(0.04), {1000, 5, false, 0});
  EXPECT_DOUBLE_EQ(sim.mean.value, -8500.0);
  EXPECT_NEAR(sim.sd.value, 0.0, 1e-9);
}

TEST(Simulation, MomentsOnlyRecoveryRejected) {
  auto model = testing::reference_model();
  const auto z = RecoveryLaw::moments_only(0.4, 0.2);
  model.recovery = RecoveryModel::constant(60, z, z);
  EXPECT_THROW(simulate_single(model, DiscountSpec::from_annual(0.04), {100, 1, false, 0}),
               ValidationError);
}

TEST(Simulation, PairCovarianceAgreesWithRecursion) {
  const auto d = DiscountSpec::from_annual(0.04);
  for (auto s : kMarketStates) {
    const auto model = testing::reference_model(s);
    const auto at0 = backward_moments(model, d)[s];
    const auto stats = SingleLoanStats::from_moments(at0, model.loan.principal());
    const auto sim = simulate_pair(model, d, {300000, 123, false, 0});
    EXPECT_LT(std::abs(sim.mean().z_score(stats.mean)), 4.0);
    EXPECT_LT(std::abs(sim.variance().z_score(stats.variance)), 4.0);
    EXPECT_LT(std::abs(sim.covariance().z_score(stats.covariance)), 4.0);
    const double var64 = portfolio_moments(stats, 64).sd;
    EXPECT_LT(std::abs(sim.portfolio_sd(64).z_score(var64)), 4.0);
  }
}

TEST(Simulation, IndependentLoansWhenRegimesAlike) {
  auto model = testing::reference_model();
  model.hazards = HazardModel::homogeneous(60, 0.02, 0.02, 0.01, 0.01);
  const auto z = RecoveryLaw::beta(2.0, 3.0);
  model.recovery = RecoveryModel::constant(60, z, z);
  const auto sim = simulate_pair(model, DiscountSpec::from_annual(0.04), {200000, 8, false, 0});
  EXPECT_LT(std::abs(sim.covariance().z_score(0.0)), 4.0);
}

TEST(Simulation, AntitheticStillUnbiased) {
  const auto model = testing::reference_model(G);
  const auto d = DiscountSpec::from_annual(0.06);
  const auto exact = forward_value_moments(model, d)[G];
  const auto sim = simulate_pair(model, d, {200000, 3, true, 0});
  EXPECT_EQ(sim.replications(), 200000u);
  EXPECT_LT(std::abs(sim.mean().z_score(exact.mean)), 4.0);
}

TEST(Simulation, IndependentOfThreadCount) {
  const auto model = testing::reference_model(G);
  const auto d = DiscountSpec::from_annual(0.04);
  const auto one = simulate_pair(model, d, {20000, 99, false, 1});
  const auto four = simulate_pair(model, d, {20000, 99, false, 4});
  const auto seven = simulate_pair(model, d, {20000, 99, false, 7});
  for (const auto* other : {&four, &seven}) {
    EXPECT_EQ(one.mean().value, other->mean().value);
    EXPECT_EQ(one.covariance().value, other->covariance().value);
    EXPECT_EQ(one.covariance().std_error, other->covariance().std_error);
  }
  const auto counts1 = simulate_event_counts(model, {20000, 5, false, 1});
  const auto counts3 = simulate_event_counts(model, {20000, 5, false, 3});
  EXPECT_EQ(counts1, counts3);
}

TEST(Simulation, SeedChangesDraws) {
  const auto model = testing::reference_model();
  const auto d = DiscountSpec::from_annual(0.04);
  EXPECT_NE(simulate_single(model, d, {5000, 1, false, 0}).mean.value,
            simulate_single(model, d, {5000, 2, false, 0}).mean.value);
}

// Pearson chi-square of the simulated exit atoms against the event distribution.
// Atoms are pooled in canonical order until each bin expects at least 5 draws.
double chi_square_pvalue(const LoanModel& model, MarketState s, std::uint64_t reps,
                         std::uint64_t seed) {
  const auto probs =
      event_probabilities(compute_at_risk(model), model.hazards).atoms(s);
  const auto counts = simulate_event_counts(model.market.initial_state() == s
                                                ? model
                                                : LoanModel{model.loan,
                                                            model.market.with_initial_state(s),
                                                            model.hazards, model.recovery},
                                            {reps, seed, false, 0});
  double stat = 0.0, p_bin = 0.0, n_bin = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    p_bin += probs[i];
    n_bin += static_cast<double>(counts[i]);
    if (p_bin * double(reps) >= 5.0 || i + 1 == probs.size()) {
      if (p_bin > 0.0) {
        const double e = p_bin * double(reps);
        stat += (n_bin - e) * (n_bin - e) / e;
        ++bins;
      }
      p_bin = n_bin = 0.0;
    }
  }
  boost::math::chi_squared dist(bins - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(EventCounts, ChiSquareGoodnessOfFit) {
  const auto model = testing::reference_model();
  for (auto s : kMarketStates) EXPECT_GT(chi_square_pvalue(model, s, 200000, 2024), 0.001);
}

TEST(EventCounts, ChiSquareOnTimeVaryingModel) {
  std::mt19937_64 rng(12);
  const auto model = testing::random_model(rng, 24);
  EXPECT_GT(chi_square_pvalue(model, B, 100000, 6), 0.001);
}

}  // namespace
}  // namespace rnpv
