#include "rnpv/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <thread>

#include "rnpv/error.hpp"
#include "rnpv/forward_engine.hpp"

namespace rnpv {
namespace {

// Substream ids within one replication.
constexpr std::uint64_t kMarketStream = 0;
constexpr std::uint64_t kFirstLoanStream = 1;
constexpr std::uint64_t kSecondLoanStream = 2;

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 64) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double mean_of(std::span<const double> v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

// Sample covariance of two equally long series.
double sample_cov(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2) return 0.0;
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma) * (b[i] - mb);
  return pairwise_sum(prod) / static_cast<double>(a.size() - 1);
}

// Averages consecutive groups of `size` entries.
std::vector<double> block_means(std::span<const double> v, std::size_t size) {
  if (size == 1) return {v.begin(), v.end()};
  std::vector<double> out(v.size() / size);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < size; ++k) s += v[i * size + k];
    out[i] = s / static_cast<double>(size);
  }
  return out;
}

unsigned thread_count(const SimConfig& cfg) {
  unsigned t = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

// Runs body(rep) for every replication; each rep writes only its own slots.
template <class Body>
void for_each_replication(const SimConfig& cfg, Body&& body) {
  const std::uint64_t n = cfg.replications;
  const std::uint64_t workers = std::min<std::uint64_t>(thread_count(cfg), n);
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < n; ++r) body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t lo = n * w / workers;
    const std::uint64_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::uint64_t r = lo; r < hi; ++r) body(r);
    });
  }
}

struct LoanPath {
  const LoanModel& model;
  const PayoffSchedule& pay;

  // Draws the exit of one loan along a market path; returns V(0).
  // `atom` receives the canonical atom index of the realized event.
  double run(std::span<const MarketState> path, StreamRng& rng, int* atom = nullptr) const {
    const int n = model.term();
    const double w = model.loan.principal();
    for (int h = 1; h <= n; ++h) {
      const auto i = static_cast<std::size_t>(h);
      const MarketState s = path[i - 1];
      const double lambda = model.hazards.default_intensity(s, h);
      const double mu = model.hazards.prepay_intensity(s, h);
      const double u = rng.uniform();
      if (u < lambda) {
        if (atom) *atom = atom::default_at(s, h, n);
        const double z = atom ? 0.0 : model.recovery.sample(s, h, rng);
        return pay.paid_annuity[i - 1] + pay.discount[i] * z * pay.exposure[i] - w;
      }
      if (u < lambda + mu) {
        if (atom) *atom = atom::prepay_at(h, n);
        return pay.paid_annuity[i - 1] + pay.discount[i] * pay.charge[i] * pay.exposure[i] - w;
      }
    }
    if (atom) *atom = atom::regular();
    return pay.paid_annuity[static_cast<std::size_t>(n)] - w;
  }
};

std::vector<MarketState> market_path(const LoanModel& model, const SimConfig& cfg,
                                     std::uint64_t rep) {
  const std::uint64_t block = cfg.antithetic ? rep / 2 : rep;
  const bool mirrored = cfg.antithetic && (rep % 2 == 1);
  StreamRng rng(cfg.seed, block, kMarketStream);
  return model.market.sample_path(model.term() - 1, rng, mirrored);
}

void check_inputs(const LoanModel& model, const SimConfig& cfg, bool needs_recovery) {
  cfg.validate();
  model.validate();
  if (needs_recovery && !model.recovery.samplable()) {
    throw ValidationError("sampling requires a distributional family for every recovery law");
  }
}

}  // namespace

void SimConfig::validate() const {
  if (replications < 1) throw ValidationError("mc.replications: must be at least 1");
  if (antithetic && replications % 2 != 0) {
    throw ValidationError("mc.replications: antithetic sampling needs an even count");
  }
  if (replications < (antithetic ? 4u : 2u)) {
    throw ValidationError("mc.replications: too few replications for standard errors");
  }
}

double SampleEstimate::z_score(double target) const {
  const double gap = value - target;
  if (std_error > 0.0) return gap / std_error;
  if (std::abs(gap) <= 1e-9 * std::max(1.0, std::abs(target))) return 0.0;
  return gap > 0.0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
}

SingleLoanSample simulate_single(const LoanModel& model, const DiscountSpec& discount,
                                 const SimConfig& cfg) {
  check_inputs(model, cfg, true);
  const auto pay = PayoffSchedule::build(model.loan, discount);
  const LoanPath loan{model, pay};

  std::vector<double> x(cfg.replications);
  for_each_replication(cfg, [&](std::uint64_t rep) {
    const auto path = market_path(model, cfg, rep);
    StreamRng rng(cfg.seed, rep, kFirstLoanStream);
    x[rep] = loan.run(path, rng);
  });

  const std::size_t block = cfg.antithetic ? 2 : 1;
  const auto n = static_cast<double>(x.size());
  const double mean = mean_of(x);
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - mean) * (x[i] - mean);

  const auto mean_blocks = block_means(x, block);
  const auto sq_blocks = block_means(sq, block);
  const auto nb = static_cast<double>(mean_blocks.size());

  SingleLoanSample out;
  out.replications = cfg.replications;
  out.mean = {mean, std::sqrt(std::max(0.0, sample_cov(mean_blocks, mean_blocks)) / nb)};
  const double correction = n / (n - 1.0);
  out.variance = {mean_of(sq) * correction,
                  correction * std::sqrt(std::max(0.0, sample_cov(sq_blocks, sq_blocks)) / nb)};
  const double sd = std::sqrt(std::max(0.0, out.variance.value));
  out.sd = {sd, sd > 0.0 ? out.variance.std_error / (2.0 * sd) : 0.0};
  return out;
}

PairSample simulate_pair(const LoanModel& model, const DiscountSpec& discount,
                         const SimConfig& cfg) {
  check_inputs(model, cfg, true);
  const auto pay = PayoffSchedule::build(model.loan, discount);
  const LoanPath loan{model, pay};

  std::vector<double> x(cfg.replications);
  std::vector<double> y(cfg.replications);
  for_each_replication(cfg, [&](std::uint64_t rep) {
    const auto path = market_path(model, cfg, rep);
    StreamRng first(cfg.seed, rep, kFirstLoanStream);
    StreamRng second(cfg.seed, rep, kSecondLoanStream);
    x[rep] = loan.run(path, first);
    y[rep] = loan.run(path, second);
  });

  const std::size_t reps = x.size();
  std::vector<double> avg(reps), var_stat(reps), cov_stat(reps);
  for (std::size_t i = 0; i < reps; ++i) avg[i] = 0.5 * (x[i] + y[i]);
  const double mean = mean_of(avg);
  for (std::size_t i = 0; i < reps; ++i) {
    const double dx = x[i] - mean;
    const double dy = y[i] - mean;
    var_stat[i] = 0.5 * (dx * dx + dy * dy);
    cov_stat[i] = dx * dy;
  }

  const std::size_t block = cfg.antithetic ? 2 : 1;
  const auto avg_b = block_means(avg, block);
  const auto var_b = block_means(var_stat, block);
  const auto cov_b = block_means(cov_stat, block);
  const auto nb = static_cast<double>(avg_b.size());

  PairSample out;
  out.replications_ = cfg.replications;
  out.blocks_ = nb;
  out.mean_ = mean;
  out.mean_var_ = sample_cov(avg_b, avg_b);
  // Pooled centering uses 2N values for the mean.
  const double n2 = 2.0 * static_cast<double>(reps);
  out.var_ = mean_of(var_stat) * n2 / (n2 - 1.0);
  out.cov_ = mean_of(cov_stat);
  out.var_var_ = sample_cov(var_b, var_b);
  out.var_cov_ = sample_cov(var_b, cov_b);
  out.cov_cov_ = sample_cov(cov_b, cov_b);
  return out;
}

SampleEstimate PairSample::mean() const {
  return {mean_, std::sqrt(std::max(0.0, mean_var_) / blocks_)};
}

SampleEstimate PairSample::variance() const {
  return {var_, std::sqrt(std::max(0.0, var_var_) / blocks_)};
}

SampleEstimate PairSample::sd() const {
  const auto v = variance();
  const double sd = std::sqrt(std::max(0.0, v.value));
  return {sd, sd > 0.0 ? v.std_error / (2.0 * sd) : 0.0};
}

SampleEstimate PairSample::covariance() const {
  return {cov_, std::sqrt(std::max(0.0, cov_cov_) / blocks_)};
}

SampleEstimate PairSample::portfolio_mean(long long m) const {
  const auto md = static_cast<double>(m);
  const auto e = mean();
  return {md * e.value, md * e.std_error};
}

SampleEstimate PairSample::portfolio_variance(long long m) const {
  const auto md = static_cast<double>(m);
  const double a = md;
  const double b = md * (md - 1.0);
  const double value = a * var_ + b * cov_;
  const double spread = a * a * var_var_ + 2.0 * a * b * var_cov_ + b * b * cov_cov_;
  return {value, std::sqrt(std::max(0.0, spread) / blocks_)};
}

SampleEstimate PairSample::portfolio_sd(long long m) const {
  const auto v = portfolio_variance(m);
  const double sd = std::sqrt(std::max(0.0, v.value));
  return {sd, sd > 0.0 ? v.std_error / (2.0 * sd) : 0.0};
}

std::vector<std::uint64_t> simulate_event_counts(const LoanModel& model, const SimConfig& cfg) {
  check_inputs(model, cfg, false);
  const auto pay = PayoffSchedule::build(model.loan, DiscountSpec::from_monthly(0.0));
  const LoanPath loan{model, pay};

  std::vector<int> atoms(cfg.replications);
  for_each_replication(cfg, [&](std::uint64_t rep) {
    const auto path = market_path(model, cfg, rep);
    StreamRng rng(cfg.seed, rep, kFirstLoanStream);
    loan.run(path, rng, &atoms[rep]);
  });

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(3 * model.term()), 0);
  for (int a : atoms) ++counts[static_cast<std::size_t>(a)];
  return counts;
}

}  // namespace rnpv
