#include "rnpv/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rnpv/backward_engine.hpp"
#include "rnpv/error.hpp"
#include "rnpv/forward_engine.hpp"

namespace rnpv {
namespace {

long long money(double v) { return std::llround(v); }

long long pow10(int places) {
  long long p = 1;
  for (int i = 0; i < places; ++i) p *= 10;
  return p;
}

std::string cell(const std::optional<Fixed>& f) { return f ? f->str() : std::string(); }

std::string ratio(const std::optional<double>& v, int places) {
  return v ? Fixed::round(*v, places).str() : std::string("n/a");
}

// Splits one CSV record, honouring RFC-4180 quoting.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ValidationError("csv: unterminated quoted field");
  return fields;
}

std::string quote_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

long long parse_integer(const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("csv: expected an integer, got '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("csv: expected an integer, got '" + text + "'");
  return v;
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

std::string rate_label(double rate) { return fmt::format("{}", rate); }

}  // namespace

// ---------------------------------------------------------------------------
// Sweep

SweepReport run_sweep(const ScenarioConfig& config) {
  const auto& model = config.model;
  model.validate();
  SweepReport report;
  report.term = model.term();

  const auto events = event_probabilities(compute_at_risk(model), model.hazards);
  report.atoms_per_state = events.atom_count();
  for (MarketState s : kMarketStates) report.regular_repayment[s] = events.regular(s);

  for (double rate : config.sweep.annual_rates) {
    const auto discount = DiscountSpec::from_annual(rate);
    const auto moments = backward_moments(model, discount);
    RateResult r;
    r.annual_rate = rate;
    r.contractual_npv = certain_npv(model.loan, discount);
    for (MarketState s : kMarketStates) {
      r.single[s] = SingleLoanStats::from_moments(moments[s], model.loan.principal());
      if (r.single[s].mean > 0.0) r.limit_cv[s] = limit_cv(r.single[s]);
    }
    for (long long m : config.sweep.portfolio_sizes) {
      PerState<PortfolioStats> row;
      for (MarketState s : kMarketStates) row[s] = portfolio_moments(r.single[s], m);
      r.rows.push_back(row);
    }
    report.rates.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fixed-point cells

Fixed Fixed::round(double value, int places) {
  if (!std::isfinite(value)) throw ValidationError("Fixed: value is not finite");
  return {std::llround(value * static_cast<double>(pow10(places))), places};
}

Fixed Fixed::parse(std::string_view text) {
  std::string t(text);
  const auto dot = t.find('.');
  const int places = dot == std::string::npos ? 0 : static_cast<int>(t.size() - dot - 1);
  std::string digits = t;
  if (dot != std::string::npos) digits.erase(dot, 1);
  if (digits.empty() || digits == "-" ||
      digits.find_first_not_of("0123456789", digits[0] == '-' ? 1 : 0) != std::string::npos) {
    throw ValidationError("csv: expected a decimal, got '" + t + "'");
  }
  return {parse_integer(digits), places};
}

double Fixed::value() const {
  return static_cast<double>(scaled) / static_cast<double>(pow10(places));
}

std::string Fixed::str() const {
  const long long scale = pow10(places);
  const long long mag = scaled < 0 ? -scaled : scaled;
  std::string out = (scaled < 0 ? "-" : "") + std::to_string(mag / scale);
  if (places > 0) out += fmt::format(".{:0{}d}", mag % scale, places);
  return out;
}

// ---------------------------------------------------------------------------
// Tables and CSV

std::vector<TableRow> table_rows(const RateResult& rate, const std::vector<long long>& sizes) {
  if (sizes.size() != rate.rows.size()) throw ValidationError("table_rows: size list mismatch");
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    TableRow row;
    row.m = sizes[i];
    for (MarketState s : kMarketStates) {
      const auto& p = rate.rows[i][s];
      row.mean[s] = money(p.mean);
      row.sd[s] = money(p.sd);
      if (std::isfinite(p.cv)) row.cv[s] = Fixed::round(p.cv, 2);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<TableRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    const std::vector<std::string> fields{
        std::to_string(r.m),
        std::to_string(r.mean[MarketState::bad]),
        std::to_string(r.sd[MarketState::bad]),
        cell(r.cv[MarketState::bad]),
        std::to_string(r.mean[MarketState::good]),
        std::to_string(r.sd[MarketState::good]),
        cell(r.cv[MarketState::good])};
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += quote_field(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<TableRow> parse_csv(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  if (lines.empty() || lines.front() != kCsvHeader) {
    throw ValidationError("csv: missing or unexpected header");
  }
  std::vector<TableRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_record(lines[i]);
    if (f.size() != 7) {
      throw ValidationError("csv: line " + std::to_string(i + 1) + " has " +
                            std::to_string(f.size()) + " fields, expected 7");
    }
    TableRow r;
    r.m = parse_integer(f[0]);
    r.mean[MarketState::bad] = parse_integer(f[1]);
    r.sd[MarketState::bad] = parse_integer(f[2]);
    if (!f[3].empty()) r.cv[MarketState::bad] = Fixed::parse(f[3]);
    r.mean[MarketState::good] = parse_integer(f[4]);
    r.sd[MarketState::good] = parse_integer(f[5]);
    if (!f[6].empty()) r.cv[MarketState::good] = Fixed::parse(f[6]);
    rows.push_back(r);
  }
  return rows;
}

std::string csv_file_name(double annual_rate) { return "rate_" + rate_label(annual_rate) + ".csv"; }

void write_csv(const SweepReport& report, const std::vector<long long>& sizes,
               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ValidationError((dir / name).string() + ": cannot write");
    out << body;
  };
  std::string summary = "rate,contractual_npv,cov_B,cov_G,rho_B,rho_G,limit_cv_B,limit_cv_G\n";
  for (const auto& r : report.rates) {
    write(csv_file_name(r.annual_rate), to_csv(table_rows(r, sizes)));
    constexpr auto B = MarketState::bad;
    constexpr auto G = MarketState::good;
    auto limit = [&](MarketState s) {
      return r.limit_cv[s] ? Fixed::round(*r.limit_cv[s], 3).str() : std::string();
    };
    summary += fmt::format("{},{},{},{},{},{},{},{}\n", rate_label(r.annual_rate),
                           money(r.contractual_npv), money(r.single[B].covariance),
                           money(r.single[G].covariance),
                           Fixed::round(r.single[B].correlation(), 5).str(),
                           Fixed::round(r.single[G].correlation(), 5).str(), limit(B), limit(G));
  }
  write("summary.csv", summary);
}

std::string render_text(const SweepReport& report, const std::vector<long long>& sizes) {
  constexpr auto B = MarketState::bad;
  constexpr auto G = MarketState::good;
  std::string out;
  out += fmt::format("Event atoms per initial state: {} (term {} months)\n",
                     report.atoms_per_state, report.term);
  out += fmt::format("P(regular repayment): B {:.4f}  G {:.4f}\n",
                     report.regular_repayment[B], report.regular_repayment[G]);

  for (const auto& r : report.rates) {
    out += fmt::format("\nAnnual discount rate: {}\n", rate_label(r.annual_rate));
    out += fmt::format("Contractual NPV: {}\n", money(r.contractual_npv));
    out += fmt::format("Covariance between any couple of loans: cov_B = {}, cov_G = {}\n",
                       money(r.single[B].covariance), money(r.single[G].covariance));
    out += fmt::format("Linear correlation coefficients: rho_B = {}, rho_G = {}\n",
                       Fixed::round(r.single[B].correlation(), 5).str(),
                       Fixed::round(r.single[G].correlation(), 5).str());
    out += fmt::format("{:>6} {:>12} {:>10} {:>7} {:>12} {:>10} {:>7}\n", "m", "E[Psi_B]",
                       "Sd[Psi_B]", "CV_B", "E[Psi_G]", "Sd[Psi_G]", "CV_G");
    for (const auto& row : table_rows(r, sizes)) {
      out += fmt::format("{:>6} {:>12} {:>10} {:>7} {:>12} {:>10} {:>7}\n", row.m, row.mean[B],
                         row.sd[B], cell(row.cv[B]), row.mean[G], row.sd[G], cell(row.cv[G]));
    }
  }

  out += "\nLimit coefficient of variation, sqrt(Cov) / E[V_s(0)]\n";
  out += fmt::format("{:>8} {:>8} {:>8}\n", "rate", "B", "G");
  for (const auto& r : report.rates) {
    out += fmt::format("{:>8} {:>8} {:>8}\n", rate_label(r.annual_rate), ratio(r.limit_cv[B], 3),
                       ratio(r.limit_cv[G], 3));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo comparison

double McComparison::z_mean() const { return sample.mean().z_score(analytic.mean); }
double McComparison::z_sd() const { return sample.sd().z_score(analytic.sd()); }
double McComparison::z_covariance() const {
  return sample.covariance().z_score(analytic.covariance);
}

std::vector<McComparison> run_mc(const ScenarioConfig& config, const SimConfig& sim) {
  std::vector<McComparison> out;
  for (double rate : config.sweep.annual_rates) {
    const auto discount = DiscountSpec::from_annual(rate);
    const auto moments = backward_moments(config.model, discount);
    for (MarketState s : kMarketStates) {
      LoanModel model = config.model;
      model.market = model.market.with_initial_state(s);
      out.push_back({rate, s, SingleLoanStats::from_moments(moments[s], model.loan.principal()),
                     simulate_pair(model, discount, sim)});
    }
  }
  return out;
}

std::string render_mc(const std::vector<McComparison>& rows, const SimConfig& sim) {
  std::string out = fmt::format("\nMonte Carlo check: {} replications, seed {}{}\n",
                                sim.replications, sim.seed, sim.antithetic ? ", antithetic" : "");
  out += fmt::format("{:>6} {:>3} {:>10} {:>10} {:>7} {:>9} {:>9} {:>7} {:>9} {:>9} {:>7}\n",
                     "rate", "s0", "E[V]", "mc", "z", "Sd[V]", "mc", "z", "Cov", "mc", "z");
  for (const auto& r : rows) {
    out += fmt::format(
        "{:>6} {:>3} {:>10.2f} {:>10.2f} {:>7.2f} {:>9.2f} {:>9.2f} {:>7.2f} {:>9.1f} {:>9.1f} "
        "{:>7.2f}\n",
        rate_label(r.annual_rate), symbol(r.initial), r.analytic.mean, r.sample.mean().value,
        r.z_mean(), r.analytic.sd(), r.sample.sd().value, r.z_sd(), r.analytic.covariance,
        r.sample.covariance().value, r.z_covariance());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cross-checks

EngineSet default_engines() {
  return {
      [](const LoanModel& m, const DiscountSpec& d) { return forward_value_moments(m, d); },
      [](const LoanModel& m, const DiscountSpec& d) {
        return value_moments(backward_moments(m, d), m.loan.principal());
      }};
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

VerifyReport verify(const ScenarioConfig& config, const std::optional<SimConfig>& mc,
                    const EngineSet& engines) {
  const auto& model = config.model;
  model.validate();
  VerifyReport report;

  double mass_residual = 0.0;
  const auto events = event_probabilities(compute_at_risk(model), model.hazards);
  for (MarketState s : kMarketStates) {
    mass_residual = std::max(mass_residual, std::abs(events.total_mass(s) - 1.0));
  }
  report.checks.push_back(
      {"probability_mass_residual", mass_residual, kMassTolerance, mass_residual <= kMassTolerance});

  double mean_gap = 0.0;
  double second_gap = 0.0;
  for (double rate : config.sweep.annual_rates) {
    const auto discount = DiscountSpec::from_annual(rate);
    const auto fwd = engines.forward(model, discount);
    const auto bwd = engines.backward(model, discount);
    for (MarketState s : kMarketStates) {
      mean_gap = std::max(mean_gap, relative_gap(fwd[s].mean, bwd[s].mean));
      second_gap = std::max(second_gap, relative_gap(fwd[s].second, bwd[s].second));
    }
  }
  report.checks.push_back({"forward_vs_backward_mean_rel_dev", mean_gap, kAnalyticTolerance,
                           mean_gap <= kAnalyticTolerance});
  report.checks.push_back({"forward_vs_backward_second_moment_rel_dev", second_gap,
                           kAnalyticTolerance, second_gap <= kAnalyticTolerance});

  if (mc) {
    for (const auto& row : run_mc(config, *mc)) {
      const std::string tag = fmt::format("[{},{}]", rate_label(row.annual_rate), symbol(row.initial));
      for (const auto& [name, z] : {std::pair{"mc_z_mean", row.z_mean()},
                                    std::pair{"mc_z_sd", row.z_sd()},
                                    std::pair{"mc_z_covariance", row.z_covariance()}}) {
        report.checks.push_back({name + tag, z, kMaxAbsZ, std::abs(z) < kMaxAbsZ});
      }
    }
  }
  return report;
}

std::string render_verify(const VerifyReport& report) {
  std::string out = "\nCross-checks\n";
  for (const auto& c : report.checks) {
    out += fmt::format("  {:<4} {:<44} {:>12.3e}  (limit {:.0e})\n", c.passed ? "ok" : "FAIL",
                       c.name, c.value, c.threshold);
  }
  out += report.passed() ? "all cross-checks passed\n" : "cross-check failure\n";
  return out;
}

}  // namespace rnpv
