#include "rnpv/loan_schedule.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

constexpr double kRateTolerance = 1e-12;
constexpr double kRepriceTolerance = 1e-9;

double present_value(std::span<const double> instalments, double rate) {
  const double v = 1.0 / (1.0 + rate);
  double factor = 1.0;
  double pv = 0.0;
  for (double r : instalments) {
    factor *= v;
    pv += r * factor;
  }
  return pv;
}

void check_finite(double x, const std::string& what) {
  if (!std::isfinite(x)) throw ValidationError(what + ": value is not finite");
}

}  // namespace

double solve_internal_rate(double principal, std::span<const double> instalments) {
  check_finite(principal, "principal");
  if (principal <= 0.0) throw ValidationError("principal: must be positive");
  if (instalments.empty()) throw ValidationError("instalments: empty schedule");
  for (double r : instalments) check_finite(r, "instalments");

  auto excess = [&](double rate) { return present_value(instalments, rate) - principal; };

  const double at_zero = excess(0.0);
  if (std::abs(at_zero) <= kRateTolerance * principal) return 0.0;
  if (at_zero < 0.0) {
    throw ValidationError("no positive IRR: instalments do not cover the principal");
  }
  const double at_one = excess(1.0);
  if (at_one >= 0.0) {
    throw ValidationError("no positive IRR: no sign change on [0, 1] monthly");
  }

  std::uintmax_t max_iter = 200;
  auto close_enough = [](double a, double b) { return std::abs(b - a) <= kRateTolerance; };
  const auto [lo, hi] =
      boost::math::tools::toms748_solve(excess, 0.0, 1.0, at_zero, at_one, close_enough, max_iter);
  const double rate = 0.5 * (lo + hi);
  if (std::abs(excess(rate)) >= kRepriceTolerance * principal) {
    throw ConsistencyError("internal rate solver did not reprice the principal");
  }
  return rate;
}

LoanSpec::LoanSpec(double principal, std::vector<double> instalments,
                   std::vector<double> prepayment_charge)
    : principal_(principal),
      instalments_(std::move(instalments)),
      charges_(std::move(prepayment_charge)) {
  if (instalments_.empty()) throw ValidationError("instalments: term must be at least 1");
  bool any_positive = false;
  for (std::size_t i = 0; i < instalments_.size(); ++i) {
    check_finite(instalments_[i], "instalments");
    if (instalments_[i] < 0.0) {
      throw ValidationError("instalments[" + std::to_string(i) + "]: must be nonnegative");
    }
    any_positive = any_positive || instalments_[i] > 0.0;
  }
  if (!any_positive) throw ValidationError("instalments: at least one must be positive");

  const std::size_t n = instalments_.size();
  if (charges_.empty()) charges_.assign(n - 1, 1.0);
  if (charges_.size() != n - 1) {
    throw ValidationError("prepayment_charge: expected " + std::to_string(n - 1) +
                          " factors (months 1..n-1), got " + std::to_string(charges_.size()));
  }
  for (std::size_t i = 0; i < charges_.size(); ++i) {
    check_finite(charges_[i], "prepayment_charge");
    if (charges_[i] < 1.0) {
      throw ValidationError("prepayment_charge[" + std::to_string(i) + "]: must be >= 1");
    }
  }
  rate_ = solve_internal_rate(principal_, instalments_);
}

LoanSpec LoanSpec::level(double principal, double instalment, int term,
                         double prepayment_charge) {
  if (term < 1) throw ValidationError("term: must be at least 1");
  return LoanSpec(principal, std::vector<double>(static_cast<std::size_t>(term), instalment),
                  std::vector<double>(static_cast<std::size_t>(term - 1), prepayment_charge));
}

double LoanSpec::instalment(int h) const {
  if (h < 1 || h > term()) throw std::out_of_range("instalment: month out of range");
  return instalments_[static_cast<std::size_t>(h - 1)];
}

double LoanSpec::prepayment_charge(int h) const {
  if (h < 1 || h >= term()) throw std::out_of_range("prepayment_charge: month out of range");
  return charges_[static_cast<std::size_t>(h - 1)];
}

double LoanSpec::exposure_at_default(int h) const {
  if (h < 1 || h > term()) throw std::out_of_range("exposure_at_default: month out of range");
  double sum = 0.0;
  for (int j = h; j <= term(); ++j) {
    sum += instalments_[static_cast<std::size_t>(j - 1)] * std::pow(1.0 + rate_, -(j - h));
  }
  return sum;
}

std::vector<double> LoanSpec::exposure_profile() const {
  const int n = term();
  std::vector<double> phi(static_cast<std::size_t>(n));
  const double v = 1.0 / (1.0 + rate_);
  double next = 0.0;
  for (int h = n; h >= 1; --h) {
    next = instalments_[static_cast<std::size_t>(h - 1)] + v * next;
    phi[static_cast<std::size_t>(h - 1)] = next;
  }
  return phi;
}

DiscountSpec::DiscountSpec(double annual, double monthly)
    : annual_(annual), monthly_(monthly), factor_(1.0 / (1.0 + monthly)) {}

DiscountSpec DiscountSpec::from_annual(double annual_rate) {
  check_finite(annual_rate, "annual_rate");
  if (annual_rate < 0.0) throw ValidationError("annual_rate: must be nonnegative");
  return DiscountSpec(annual_rate, std::expm1(std::log1p(annual_rate) / 12.0));
}

DiscountSpec DiscountSpec::from_monthly(double monthly_rate) {
  check_finite(monthly_rate, "monthly_rate");
  if (monthly_rate < 0.0) throw ValidationError("monthly_rate: must be nonnegative");
  return DiscountSpec(std::expm1(12.0 * std::log1p(monthly_rate)), monthly_rate);
}

double DiscountSpec::factor(int h) const { return std::pow(1.0 + monthly_, -h); }

double certain_npv(const LoanSpec& loan, const DiscountSpec& discount) {
  const double y = discount.monthly_rate();
  const double x = loan.contractual_rate();
  double sum = 0.0;
  for (int j = 1; j <= loan.term(); ++j) {
    sum += loan.instalment(j) * (std::pow(1.0 + y, -j) - std::pow(1.0 + x, -j));
  }
  return sum;
}

PayoffSchedule PayoffSchedule::build(const LoanSpec& loan, const DiscountSpec& discount) {
  const int n = loan.term();
  const auto size = static_cast<std::size_t>(n + 1);
  PayoffSchedule s;
  s.paid_annuity.assign(size, 0.0);
  s.discount.assign(size, 1.0);
  s.exposure.assign(size, 0.0);
  s.charge.assign(size, 1.0);
  const auto phi = loan.exposure_profile();
  for (int h = 1; h <= n; ++h) {
    const auto i = static_cast<std::size_t>(h);
    s.discount[i] = discount.factor(h);
    s.paid_annuity[i] = s.paid_annuity[i - 1] + loan.instalment(h) * s.discount[i];
    s.exposure[i] = phi[i - 1];
    if (h < n) s.charge[i] = loan.prepayment_charge(h);
  }
  return s;
}

}  // namespace rnpv
