#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rnpv/market_state.hpp"
#include "rnpv/rng.hpp"

namespace rnpv {

// Default and prepayment intensities conditional on survival to h-1 and on the
// state S_{h-1}. Defaults run over h = 1..n, prepayments over h = 1..n-1;
// prepayment at maturity is stored as 0.
class HazardModel {
 public:
  HazardModel(std::vector<double> default_bad, std::vector<double> default_good,
              std::vector<double> prepay_bad, std::vector<double> prepay_good);

  static HazardModel homogeneous(int term, double default_bad, double default_good,
                                 double prepay_bad, double prepay_good);

  int term() const { return static_cast<int>(default_[0].size()); }

  double default_intensity(MarketState s, int h) const;
  double prepay_intensity(MarketState s, int h) const;
  // 1 - lambda_s(h) - mu_s(h)
  double survival(MarketState s, int h) const;

 private:
  std::array<std::vector<double>, 2> default_;
  std::array<std::vector<double>, 2> prepay_;  // length n, last entry 0
};

struct BetaParams {
  double a;
  double b;
};

// Beta law with the given mean and standard deviation.
// Throws ValidationError if sd^2 >= mean (1 - mean) or mean is not in (0, 1).
BetaParams beta_from_moments(double mean, double sd);

struct RecoveryMoments {
  double mean;    // E[Z]
  double second;  // E[Z^2]

  double variance() const { return second - mean * mean; }
};

// Law of a recovery rate Z in [0, 1]. The analytic engines only need the first two
// moments; sampling needs a distributional family (beta or a point mass).
class RecoveryLaw {
 public:
  static RecoveryLaw beta(double a, double b);
  static RecoveryLaw from_mean_sd(double mean, double sd);  // beta-matched
  static RecoveryLaw point(double z);
  static RecoveryLaw moments_only(double mean, double second_moment);

  const RecoveryMoments& moments() const { return moments_; }
  const std::optional<BetaParams>& beta_params() const { return beta_; }
  bool samplable() const { return beta_.has_value() || point_; }

  double sample(StreamRng& rng) const;

 private:
  RecoveryLaw(RecoveryMoments m, std::optional<BetaParams> beta, bool point);

  RecoveryMoments moments_;
  std::optional<BetaParams> beta_;
  bool point_ = false;
};

// Recovery laws Z_s(h) per state and month h = 1..n.
class RecoveryModel {
 public:
  RecoveryModel(std::vector<RecoveryLaw> bad, std::vector<RecoveryLaw> good);

  static RecoveryModel constant(int term, const RecoveryLaw& bad, const RecoveryLaw& good);

  int term() const { return static_cast<int>(laws_[0].size()); }
  const RecoveryLaw& law(MarketState s, int h) const;
  const RecoveryMoments& moments(MarketState s, int h) const { return law(s, h).moments(); }
  bool samplable() const;

  double sample(MarketState s, int h, StreamRng& rng) const;

 private:
  std::array<std::vector<RecoveryLaw>, 2> laws_;
};

}  // namespace rnpv
