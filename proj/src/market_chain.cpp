#include "rnpv/market_chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rnpv/error.hpp"

namespace rnpv {
namespace {

void check_probabilities(const std::vector<double>& p, const char* field) {
  if (p.empty()) throw ValidationError(std::string(field) + ": empty sequence");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw ValidationError(std::string(field) + "[" + std::to_string(i) +
                            "]: probability out of [0,1]");
    }
  }
}

}  // namespace

MarketModel::MarketModel(MarketState initial, std::vector<double> persist_bad,
                         std::vector<double> persist_good)
    : initial_(initial), persist_bad_(std::move(persist_bad)), persist_good_(std::move(persist_good)) {
  check_probabilities(persist_bad_, "persist_bad");
  check_probabilities(persist_good_, "persist_good");
  if (persist_bad_.size() != persist_good_.size()) {
    throw ValidationError("persist_good: length differs from persist_bad");
  }
}

MarketModel MarketModel::homogeneous(MarketState initial, double persist_bad,
                                     double persist_good, int horizon) {
  if (horizon < 1) throw ValidationError("horizon: must be at least 1");
  const auto n = static_cast<std::size_t>(horizon);
  return MarketModel(initial, std::vector<double>(n, persist_bad),
                     std::vector<double>(n, persist_good));
}

MarketModel MarketModel::with_initial_state(MarketState s) const {
  MarketModel copy = *this;
  copy.initial_ = s;
  return copy;
}

double MarketModel::persistence(MarketState s, int h) const {
  if (h < 1 || h > horizon()) throw std::out_of_range("persistence: period out of range");
  const auto i = static_cast<std::size_t>(h - 1);
  return s == MarketState::bad ? persist_bad_[i] : persist_good_[i];
}

bool MarketModel::is_homogeneous() const {
  for (std::size_t i = 1; i < persist_bad_.size(); ++i) {
    if (persist_bad_[i] != persist_bad_[0] || persist_good_[i] != persist_good_[0]) return false;
  }
  return true;
}

TransitionMatrix MarketModel::transition_matrix(int h) const {
  const double b = persistence(MarketState::bad, h);
  const double g = persistence(MarketState::good, h);
  return {{{b, 1.0 - b}, {1.0 - g, g}}};
}

double MarketModel::expected_sojourn(MarketState s) const {
  if (!is_homogeneous()) {
    throw UnsupportedError("expected_sojourn: persistence sequence is not constant");
  }
  const double p = persistence(s, 1);
  if (p >= 1.0) throw UnsupportedError("expected_sojourn: absorbing state, sojourn is infinite");
  return 1.0 / (1.0 - p);
}

std::vector<MarketState> MarketModel::sample_path(int horizon_months, StreamRng& rng,
                                                  bool mirrored) const {
  if (horizon_months < 0 || horizon_months > horizon()) {
    throw ValidationError("sample_path: horizon exceeds persistence sequences");
  }
  std::vector<MarketState> path(static_cast<std::size_t>(horizon_months) + 1);
  path[0] = initial_;
  for (int h = 1; h <= horizon_months; ++h) {
    const MarketState prev = path[static_cast<std::size_t>(h - 1)];
    double u = rng.uniform();
    if (mirrored) u = 1.0 - u;
    path[static_cast<std::size_t>(h)] = u < persistence(prev, h) ? prev : other(prev);
  }
  return path;
}

std::vector<MarketState> MarketModel::sample_path(int horizon_months, std::uint64_t seed) const {
  StreamRng rng(seed);
  return sample_path(horizon_months, rng);
}

PerState<double> stationary_distribution(double persist_bad, double persist_good) {
  const double leave_bad = 1.0 - persist_bad;
  const double leave_good = 1.0 - persist_good;
  if (leave_bad + leave_good <= 0.0) {
    throw UnsupportedError("stationary_distribution: both states absorbing");
  }
  PerState<double> pi;
  pi[MarketState::bad] = leave_good / (leave_bad + leave_good);
  pi[MarketState::good] = leave_bad / (leave_bad + leave_good);
  return pi;
}

}  // namespace rnpv
