#pragma once

#include <cstdint>
#include <vector>

#include "rnpv/model.hpp"

namespace rnpv {

struct SimConfig {
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
  // Pairs of replications share one market stream, the second mirrored (u -> 1-u).
  // Standard errors are then computed over pair averages. Requires an even count.
  bool antithetic = false;
  // 0 = std::thread::hardware_concurrency(). Results do not depend on this value.
  unsigned threads = 0;

  void validate() const;
};

struct SampleEstimate {
  double value = 0.0;
  double std_error = 0.0;

  // (value - target) / std_error; 0 when both the error and the gap vanish.
  double z_score(double target) const;
};

// Sample moments of V_s(0) for the model's initial state.
struct SingleLoanSample {
  std::uint64_t replications = 0;
  SampleEstimate mean;
  SampleEstimate variance;
  SampleEstimate sd;
};

// Two loans sharing one market path, exits and recoveries drawn independently.
// Mean and variance pool both loans.
class PairSample {
 public:
  std::uint64_t replications() const { return replications_; }

  SampleEstimate mean() const;
  SampleEstimate variance() const;
  SampleEstimate sd() const;
  SampleEstimate covariance() const;

  // Psi_m = sum of m loans: E = m E[V], Var = m V + m(m-1) Cov.
  SampleEstimate portfolio_mean(long long m) const;
  SampleEstimate portfolio_variance(long long m) const;
  SampleEstimate portfolio_sd(long long m) const;

 private:
  friend PairSample simulate_pair(const LoanModel&, const DiscountSpec&, const SimConfig&);

  std::uint64_t replications_ = 0;
  double blocks_ = 0.0;
  double mean_ = 0.0, mean_var_ = 0.0;  // estimate and block-variance of the mean statistic
  double var_ = 0.0, cov_ = 0.0;
  // Block covariance matrix of (variance statistic, covariance statistic).
  double var_var_ = 0.0, var_cov_ = 0.0, cov_cov_ = 0.0;
};

// Throws ValidationError if a recovery law has no distributional family.
SingleLoanSample simulate_single(const LoanModel& model, const DiscountSpec& discount,
                                 const SimConfig& cfg);

PairSample simulate_pair(const LoanModel& model, const DiscountSpec& discount,
                         const SimConfig& cfg);

// Counts of the exit atom realized per replication, in the canonical atom order of
// EventDistribution::atoms. No recovery sampling is needed.
std::vector<std::uint64_t> simulate_event_counts(const LoanModel& model, const SimConfig& cfg);

}  // namespace rnpv
