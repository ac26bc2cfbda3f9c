#include "rnpv/loan_schedule.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

double reprice(std::span<const double> r, double x) {
  double pv = 0.0;
  for (std::size_t h = 1; h <= r.size(); ++h) pv += r[h - 1] / std::pow(1.0 + x, double(h));
  return pv;
}

TEST(InternalRate, LevelLoanMatchesPrintedRate) {
  const std::vector<double> r(60, 190.0);
  const double x = solve_internal_rate(8500.0, r);
  EXPECT_NEAR(x, 0.010179, 5e-7);
  // Printed APR 0.129224 is (1.010179)^12 - 1, i.e. from the rate rounded to 6 places.
  EXPECT_NEAR(std::pow(1.0 + x, 12) - 1.0, 0.129224, 1e-5);
  EXPECT_LT(std::abs(reprice(r, x) - 8500.0), 1e-9 * 8500.0);
}

TEST(InternalRate, ZeroRateWhenInstalmentsEqualPrincipal) {
  const std::vector<double> r{25.0, 25.0, 25.0, 25.0};
  EXPECT_EQ(solve_internal_rate(100.0, r), 0.0);
}

TEST(InternalRate, OnePeriodClosedForm) {
  const std::vector<double> r{110.0};
  EXPECT_NEAR(solve_internal_rate(100.0, r), 0.10, 1e-12);
}

TEST(InternalRate, Errors) {
  const std::vector<double> r{10.0, 10.0};
  EXPECT_THROW(solve_internal_rate(100.0, r), ValidationError);  // no positive IRR
  EXPECT_THROW(solve_internal_rate(-1.0, r), ValidationError);
  const std::vector<double> bad{NAN, 10.0};
  EXPECT_THROW(solve_internal_rate(5.0, bad), ValidationError);
  // Monthly rate above 100%: no sign change on [0, 1].
  const std::vector<double> huge{1000.0};
  EXPECT_THROW(solve_internal_rate(1.0, huge), ValidationError);
}

TEST(InternalRate, RepricesRandomSchedules) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amount(0.0, 300.0);
  std::uniform_real_distribution<double> rate(0.0005, 0.2);
  std::uniform_int_distribution<int> term(1, 120);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> r(static_cast<std::size_t>(term(rng)));
    for (auto& v : r) v = amount(rng);
    r.back() += 1.0;
    const double target = rate(rng);
    const double w = reprice(r, target);
    const double x = solve_internal_rate(w, r);
    EXPECT_NEAR(x, target, 1e-9);
    EXPECT_LT(std::abs(reprice(r, x) - w), 1e-9 * w);
  }
}

TEST(LoanSpec, Validation) {
  EXPECT_THROW(LoanSpec(100.0, {}), ValidationError);
  EXPECT_THROW(LoanSpec(100.0, {60.0, -1.0, 60.0}), ValidationError);
  EXPECT_THROW(LoanSpec(100.0, {0.0, 0.0}), ValidationError);
  EXPECT_THROW(LoanSpec(100.0, {60.0, 60.0}, {0.99}), ValidationError);  // gamma < 1
  EXPECT_THROW(LoanSpec(100.0, {60.0, 60.0}, {1.0, 1.0}), ValidationError);  // length n-1
  const LoanSpec ok(100.0, {60.0, 60.0}, {1.02});
  EXPECT_DOUBLE_EQ(ok.prepayment_charge(1), 1.02);
  EXPECT_THROW(ok.prepayment_charge(2), std::out_of_range);
}

TEST(Exposure, EndpointsAndRollUp) {
  const auto loan = LoanSpec::level(8500.0, 190.0, 60);
  const double x = loan.contractual_rate();
  EXPECT_NEAR(loan.exposure_at_default(1), 8500.0 * (1.0 + x), 1e-8);
  EXPECT_DOUBLE_EQ(loan.exposure_at_default(60), 190.0);
  const auto profile = loan.exposure_profile();
  EXPECT_NEAR(profile[29], loan.exposure_at_default(30), 1e-9 * profile[29]);
  EXPECT_THROW(loan.exposure_at_default(0), std::out_of_range);
  EXPECT_THROW(loan.exposure_at_default(61), std::out_of_range);
}

TEST(Exposure, TelescopingAndMonotone) {
  const auto loan = LoanSpec::level(8500.0, 190.0, 60);
  const double v = 1.0 / (1.0 + loan.contractual_rate());
  for (int h = 1; h < 60; ++h) {
    const double lhs = loan.exposure_at_default(h);
    const double rhs = loan.instalment(h) + v * loan.exposure_at_default(h + 1);
    EXPECT_NEAR(lhs, rhs, 1e-12 * lhs);
    EXPECT_GT(lhs, loan.exposure_at_default(h + 1));
  }
}

TEST(Discount, CompoundConversion) {
  const auto d = DiscountSpec::from_annual(0.04);
  EXPECT_NEAR(std::pow(1.0 + d.monthly_rate(), 12) - 1.0, 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(d.monthly_factor(), 1.0 / (1.0 + d.monthly_rate()));
  EXPECT_EQ(DiscountSpec::from_annual(0.0).monthly_factor(), 1.0);
  EXPECT_THROW(DiscountSpec::from_annual(-0.01), ValidationError);
}

TEST(CertainNpv, PrintedValueAndIdentities) {
  const auto loan = LoanSpec::level(8500.0, 190.0, 60);
  EXPECT_EQ(std::llround(certain_npv(loan, DiscountSpec::from_annual(0.04))), 1835);
  EXPECT_NEAR(certain_npv(loan, DiscountSpec::from_annual(0.0)), 60 * 190.0 - 8500.0, 1e-6);
  EXPECT_NEAR(certain_npv(loan, DiscountSpec::from_monthly(loan.contractual_rate())), 0.0, 1e-8);
}

TEST(CertainNpv, DecreasingInRate) {
  const auto loan = LoanSpec::level(8500.0, 190.0, 60);
  double prev = certain_npv(loan, DiscountSpec::from_annual(0.0));
  for (double y = 0.01; y <= 0.3; y += 0.01) {
    const double cur = certain_npv(loan, DiscountSpec::from_annual(y));
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

}  // namespace
}  // namespace rnpv
