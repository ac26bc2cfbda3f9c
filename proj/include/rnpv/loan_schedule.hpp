#pragma once

#include <span>
#include <vector>

namespace rnpv {

// Monthly rate x solving principal = sum_h instalments[h-1] (1+x)^-h.
// Returns 0 when the undiscounted instalments already equal the principal.
// Throws ValidationError when no nonnegative rate reprices the principal.
double solve_internal_rate(double principal, std::span<const double> instalments);

// Contractual amortization plan of a single loan.
//
// Month indices are 1-based throughout: instalment(h) is due at time h,
// prepayment_charge(h) is defined for h = 1..n-1.
class LoanSpec {
 public:
  // `prepayment_charge` may be empty (no charge, gamma = 1) or hold n-1 factors >= 1.
  LoanSpec(double principal, std::vector<double> instalments,
           std::vector<double> prepayment_charge = {});

  // Level plan: `term` equal instalments.
  static LoanSpec level(double principal, double instalment, int term,
                        double prepayment_charge = 1.0);

  double principal() const { return principal_; }
  int term() const { return static_cast<int>(instalments_.size()); }
  double contractual_rate() const { return rate_; }
  std::span<const double> instalments() const { return instalments_; }
  std::span<const double> prepayment_charges() const { return charges_; }

  double instalment(int h) const;
  // gamma(h) for h = 1..n-1. Prepayment is not possible at maturity.
  double prepayment_charge(int h) const;

  // phi(h): value at the contractual rate of the instalments r_h..r_n, seen at h.
  double exposure_at_default(int h) const;

  // phi(1..n) via the roll-up phi(h) = r_h + phi(h+1)/(1+x); element h-1 holds phi(h).
  std::vector<double> exposure_profile() const;

 private:
  double principal_;
  std::vector<double> instalments_;
  std::vector<double> charges_;
  double rate_ = 0.0;
};

// Evaluation rate. Annual rates are converted by compounding: (1+y)^12 = 1 + annual.
class DiscountSpec {
 public:
  static DiscountSpec from_annual(double annual_rate);
  static DiscountSpec from_monthly(double monthly_rate);

  double annual_rate() const { return annual_; }
  double monthly_rate() const { return monthly_; }
  // v = (1+y)^-1
  double monthly_factor() const { return factor_; }
  // (1+y)^-h
  double factor(int h) const;

 private:
  DiscountSpec(double annual, double monthly);

  double annual_;
  double monthly_;
  double factor_;
};

// NPV earned if neither default nor prepayment could happen:
// sum_j r_j [(1+y)^-j - (1+x)^-j].
double certain_npv(const LoanSpec& loan, const DiscountSpec& discount);

// Cash-flow quantities that every payoff branch is built from, tabulated once
// for a (loan, discount) pair. Vectors are indexed by month h = 0..n.
struct PayoffSchedule {
  std::vector<double> paid_annuity;  // sum_{j<=h} r_j (1+y)^-j, paid_annuity[0] = 0
  std::vector<double> discount;      // (1+y)^-h
  std::vector<double> exposure;      // phi(h), exposure[0] unused
  std::vector<double> charge;        // gamma(h), 1 at h = n

  static PayoffSchedule build(const LoanSpec& loan, const DiscountSpec& discount);
};

}  // namespace rnpv
