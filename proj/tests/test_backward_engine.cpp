#include "rnpv/backward_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rnpv/forward_engine.hpp"
#include "support/enumeration_oracle.hpp"
#include "support/fixtures.hpp"

namespace rnpv {
namespace {

constexpr auto B = MarketState::bad;
constexpr auto G = MarketState::good;

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

TEST(Backward, AgreesWithForwardOnRandomModels) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const auto model = testing::random_model(rng, 60);
    const auto d = testing::random_discount(rng);
    const auto fwd = forward_value_moments(model, d);
    const auto bwd = value_moments(backward_moments(model, d), model.loan.principal());
    for (auto s : kMarketStates) {
      EXPECT_LT(rel(fwd[s].mean, bwd[s].mean), 1e-9) << "trial " << trial;
      EXPECT_LT(rel(fwd[s].second, bwd[s].second), 1e-9) << "trial " << trial;
    }
  }
}

TEST(Backward, MatchesEnumerationOnShortTerms) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto model = testing::random_model(rng, 4);
    const auto d = testing::random_discount(rng);
    const auto at0 = backward_moments(model, d);
    const auto vm = value_moments(at0, model.loan.principal());
    for (auto s : kMarketStates) {
      const auto e = testing::enumerate_moments(model, d, s);
      EXPECT_LT(rel(vm[s].mean, e.mean_v), 1e-12);
      EXPECT_LT(rel(vm[s].second, e.second_v), 1e-12);
      EXPECT_LT(rel(at0[s].cross(), e.cross_r), 1e-12);
    }
  }
}

TEST(Backward, TerminalIsOneStepFromZero) {
  const auto model = testing::reference_model();
  const auto d = DiscountSpec::from_annual(0.06);
  const auto direct = terminal_moments(model, d);
  const auto stepped = backward_step(model, d, 60, MomentSet{});
  for (auto s : kMarketStates) {
    EXPECT_NEAR(direct[s].mean, stepped[s].mean, 1e-12);
    EXPECT_NEAR(direct[s].var, stepped[s].var, 1e-9);
    EXPECT_NEAR(direct[s].cov, stepped[s].cov, 1e-9);
  }
}

TEST(Backward, TableEndsMatchPass) {
  const auto model = testing::reference_model();
  const auto d = DiscountSpec::from_annual(0.05);
  const auto table = backward_moment_table(model, d);
  ASSERT_EQ(table.size(), 60u);
  const auto at0 = backward_moments(model, d);
  EXPECT_EQ(table[0][B].mean, at0[B].mean);
  EXPECT_EQ(table[59][G].mean, terminal_moments(model, d)[G].mean);
}

TEST(Backward, ReferenceCovariances) {
  const auto model = testing::reference_model();
  const auto at0 = backward_moments(model, DiscountSpec::from_annual(0.04));
  EXPECT_EQ(std::llround(at0[B].covariance()), 19848);
  EXPECT_EQ(std::llround(at0[G].covariance()), 15146);
}

TEST(Backward, CovarianceNonnegative) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = testing::random_model(rng, 60);
    const auto at0 = backward_moments(model, testing::random_discount(rng));
    for (auto s : kMarketStates) {
      EXPECT_GE(at0[s].covariance(), 0.0) << "trial " << trial;
    }
  }
}

TEST(Backward, NoCovarianceWhenRegimesAlike) {
  auto model = testing::reference_model();
  model.hazards = HazardModel::homogeneous(60, 0.005, 0.005, 0.009, 0.009);
  const auto z = RecoveryLaw::from_mean_sd(0.3, 0.2);
  model.recovery = RecoveryModel::constant(60, z, z);
  const auto at0 = backward_moments(model, DiscountSpec::from_annual(0.04));
  for (auto s : kMarketStates) EXPECT_NEAR(at0[s].covariance(), 0.0, 1e-10);
  EXPECT_NEAR(at0[B].mean, at0[G].mean, 1e-9);
}

TEST(Backward, RisklessHasNoSpread) {
  const auto model = testing::riskless_model();
  const auto d = DiscountSpec::from_annual(0.03);
  const auto vm = value_moments(backward_moments(model, d), model.loan.principal());
  for (auto s : kMarketStates) {
    EXPECT_NEAR(vm[s].mean, certain_npv(model.loan, d), 1e-9);
    EXPECT_EQ(vm[s].variance(), 0.0);
  }
}

}  // namespace
}  // namespace rnpv
