#include "rnpv/behavior_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

// Slack for lambda + mu <= 1 when both are given with finite decimal precision.
constexpr double kSumSlack = 1e-15;

void check_intensities(const std::vector<double>& v, const char* field) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw ValidationError(std::string(field) + "[" + std::to_string(i) +
                            "]: intensity out of [0,1]");
    }
  }
}

void check_moments(const RecoveryMoments& m) {
  if (!(m.mean >= 0.0 && m.mean <= 1.0)) {
    throw ValidationError("recovery mean out of [0,1]");
  }
  // Relative slack absorbs rounding in moments derived from (a, b) or (mean, sd).
  const double slack = 1e-12;
  if (m.second < m.mean * m.mean - slack) {
    throw ValidationError("recovery second moment below squared mean (negative variance)");
  }
  if (m.second > m.mean + slack) {
    throw ValidationError("recovery second moment exceeds mean (support beyond [0,1])");
  }
}

}  // namespace

HazardModel::HazardModel(std::vector<double> default_bad, std::vector<double> default_good,
                         std::vector<double> prepay_bad, std::vector<double> prepay_good) {
  check_intensities(default_bad, "default_bad");
  check_intensities(default_good, "default_good");
  check_intensities(prepay_bad, "prepay_bad");
  check_intensities(prepay_good, "prepay_good");
  const std::size_t n = default_bad.size();
  if (n == 0) throw ValidationError("default_bad: empty sequence");
  if (default_good.size() != n) {
    throw ValidationError("default_good: expected " + std::to_string(n) + " entries");
  }
  for (auto* p : {&prepay_bad, &prepay_good}) {
    if (p->size() != n - 1) {
      throw ValidationError(std::string(p == &prepay_bad ? "prepay_bad" : "prepay_good") +
                            ": expected " + std::to_string(n - 1) + " entries (months 1..n-1)");
    }
    p->push_back(0.0);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (default_bad[i] + prepay_bad[i] > 1.0 + kSumSlack) {
      throw ValidationError("prepay_bad[" + std::to_string(i) +
                            "]: default + prepayment intensity exceeds 1");
    }
    if (default_good[i] + prepay_good[i] > 1.0 + kSumSlack) {
      throw ValidationError("prepay_good[" + std::to_string(i) +
                            "]: default + prepayment intensity exceeds 1");
    }
  }
  default_ = {std::move(default_bad), std::move(default_good)};
  prepay_ = {std::move(prepay_bad), std::move(prepay_good)};
}

HazardModel HazardModel::homogeneous(int term, double default_bad, double default_good,
                                     double prepay_bad, double prepay_good) {
  if (term < 1) throw ValidationError("term: must be at least 1");
  const auto n = static_cast<std::size_t>(term);
  return HazardModel(std::vector<double>(n, default_bad), std::vector<double>(n, default_good),
                     std::vector<double>(n - 1, prepay_bad), std::vector<double>(n - 1, prepay_good));
}

double HazardModel::default_intensity(MarketState s, int h) const {
  if (h < 1 || h > term()) throw std::out_of_range("default_intensity: month out of range");
  return default_[index_of(s)][static_cast<std::size_t>(h - 1)];
}

double HazardModel::prepay_intensity(MarketState s, int h) const {
  if (h < 1 || h > term()) throw std::out_of_range("prepay_intensity: month out of range");
  return prepay_[index_of(s)][static_cast<std::size_t>(h - 1)];
}

double HazardModel::survival(MarketState s, int h) const {
  const double q = 1.0 - default_intensity(s, h) - prepay_intensity(s, h);
  return q < 0.0 ? 0.0 : q;
}

BetaParams beta_from_moments(double mean, double sd) {
  if (!std::isfinite(mean) || !std::isfinite(sd)) {
    throw ValidationError("beta_from_moments: non-finite input");
  }
  if (mean <= 0.0 || mean >= 1.0) {
    throw ValidationError("beta_from_moments: degenerate mean, must lie in (0,1)");
  }
  if (sd <= 0.0) throw ValidationError("beta_from_moments: sd must be positive");
  const double bound = mean * (1.0 - mean);
  const double var = sd * sd;
  if (var >= bound) throw ValidationError("variance exceeds beta bound mean*(1-mean)");
  const double k = bound / var - 1.0;
  return {mean * k, (1.0 - mean) * k};
}

RecoveryLaw::RecoveryLaw(RecoveryMoments m, std::optional<BetaParams> beta, bool point)
    : moments_(m), beta_(beta), point_(point) {
  check_moments(moments_);
}

RecoveryLaw RecoveryLaw::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("beta parameters must be positive and finite");
  }
  const double s = a + b;
  return RecoveryLaw({a / s, (a + 1.0) * a / ((s + 1.0) * s)}, BetaParams{a, b}, false);
}

RecoveryLaw RecoveryLaw::from_mean_sd(double mean, double sd) {
  const BetaParams p = beta_from_moments(mean, sd);
  return RecoveryLaw({mean, mean * mean + sd * sd}, p, false);
}

RecoveryLaw RecoveryLaw::point(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw ValidationError("recovery point mass out of [0,1]");
  return RecoveryLaw({z, z * z}, std::nullopt, true);
}

RecoveryLaw RecoveryLaw::moments_only(double mean, double second_moment) {
  return RecoveryLaw({mean, second_moment}, std::nullopt, false);
}

double RecoveryLaw::sample(StreamRng& rng) const {
  if (point_) return moments_.mean;
  if (!beta_) throw ValidationError("sampling requires a distributional family");
  std::gamma_distribution<double> ga(beta_->a, 1.0);
  std::gamma_distribution<double> gb(beta_->b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return x + y > 0.0 ? x / (x + y) : moments_.mean;
}

RecoveryModel::RecoveryModel(std::vector<RecoveryLaw> bad, std::vector<RecoveryLaw> good) {
  if (bad.empty()) throw ValidationError("recovery.bad: empty sequence");
  if (bad.size() != good.size()) throw ValidationError("recovery.good: length differs from bad");
  laws_ = {std::move(bad), std::move(good)};
}

RecoveryModel RecoveryModel::constant(int term, const RecoveryLaw& bad, const RecoveryLaw& good) {
  if (term < 1) throw ValidationError("term: must be at least 1");
  const auto n = static_cast<std::size_t>(term);
  return RecoveryModel(std::vector<RecoveryLaw>(n, bad), std::vector<RecoveryLaw>(n, good));
}

const RecoveryLaw& RecoveryModel::law(MarketState s, int h) const {
  if (h < 1 || h > term()) throw std::out_of_range("recovery: month out of range");
  return laws_[index_of(s)][static_cast<std::size_t>(h - 1)];
}

bool RecoveryModel::samplable() const {
  for (const auto& laws : laws_) {
    for (const auto& l : laws) {
      if (!l.samplable()) return false;
    }
  }
  return true;
}

double RecoveryModel::sample(MarketState s, int h, StreamRng& rng) const {
  return law(s, h).sample(rng);
}

}  // namespace rnpv
