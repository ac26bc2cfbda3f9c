#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnpv/config.hpp"
#include "rnpv/mc_oracle.hpp"
#include "rnpv/portfolio.hpp"

namespace rnpv {

// Exact results for one evaluation rate.
struct RateResult {
  double annual_rate = 0.0;
  double contractual_npv = 0.0;
  PerState<SingleLoanStats> single;
  PerState<std::optional<double>> limit_cv;
  std::vector<PerState<PortfolioStats>> rows;  // sweep.portfolio_sizes order
};

struct SweepReport {
  int term = 0;
  int atoms_per_state = 0;
  PerState<double> regular_repayment;  // P(E_s)
  std::vector<RateResult> rates;
};

SweepReport run_sweep(const ScenarioConfig& config);

// Decimal with a fixed number of places, stored as a scaled integer so that
// rendered tables compare exactly.
struct Fixed {
  long long scaled = 0;
  int places = 0;

  static Fixed round(double value, int places);
  static Fixed parse(std::string_view text);
  double value() const;
  std::string str() const;

  friend bool operator==(const Fixed&, const Fixed&) = default;
};

// One printed row of a rate table: money rounded to units, CV to 2 places.
struct TableRow {
  long long m = 0;
  PerState<long long> mean;
  PerState<long long> sd;
  PerState<std::optional<Fixed>> cv;  // empty when the mean is 0

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

std::vector<TableRow> table_rows(const RateResult& rate, const std::vector<long long>& sizes);

inline constexpr std::string_view kCsvHeader = "m,mean_B,sd_B,cv_B,mean_G,sd_G,cv_G";

std::string to_csv(const std::vector<TableRow>& rows);
// Throws ValidationError on a malformed document.
std::vector<TableRow> parse_csv(std::string_view text);

// "rate_0.04.csv"
std::string csv_file_name(double annual_rate);
// One file per rate plus summary.csv (npv, covariances, correlations, limit CVs).
void write_csv(const SweepReport& report, const std::vector<long long>& sizes,
               const std::filesystem::path& dir);

std::string render_text(const SweepReport& report, const std::vector<long long>& sizes);

// Monte Carlo comparison per (rate, initial state).
struct McComparison {
  double annual_rate = 0.0;
  MarketState initial = MarketState::bad;
  SingleLoanStats analytic;
  PairSample sample;

  double z_mean() const;
  double z_sd() const;
  double z_covariance() const;
};

std::vector<McComparison> run_mc(const ScenarioConfig& config, const SimConfig& sim);
std::string render_mc(const std::vector<McComparison>& rows, const SimConfig& sim);

// Cross-check harness.
struct EngineSet {
  using Engine = std::function<PerState<ValueMoments>(const LoanModel&, const DiscountSpec&)>;
  Engine forward;
  Engine backward;
};
EngineSet default_engines();

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<std::string> failures() const;
};

inline constexpr double kAnalyticTolerance = 1e-9;
inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kMaxAbsZ = 4.0;

VerifyReport verify(const ScenarioConfig& config, const std::optional<SimConfig>& mc,
                    const EngineSet& engines = default_engines());
std::string render_verify(const VerifyReport& report);

}  // namespace rnpv
