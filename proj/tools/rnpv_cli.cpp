// rnpv: random net present value of loans and exchangeable loan portfolios under
// regime-switching default and prepayment risk.
//
// Exit codes: 0 ok, 1 validation error, 2 cross-check failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rnpv/config.hpp"
#include "rnpv/error.hpp"
#include "rnpv/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCrossCheck = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of the random NPV of loans and exchangeable loan portfolios"};

  std::string config_path;
  std::string csv_dir;
  bool run_mc = false;
  bool run_verify = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> reps;
  unsigned threads = 0;

  app.add_option("--config", config_path, "Scenario file (JSON grammar)")->required();
  app.add_flag("--mc", run_mc, "Add a Monte Carlo comparison to the report");
  app.add_option("--seed", seed, "Monte Carlo seed (overrides mc.seed)");
  app.add_option("--reps", reps, "Monte Carlo replications (overrides mc.replications)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verify", run_verify, "Run engine cross-checks; exit 2 on failure");
  app.add_option("--csv", csv_dir, "Write one CSV table per rate into this directory");
  app.add_option("--threads", threads, "Monte Carlo worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const auto config = rnpv::load_config(config_path);
    rnpv::SimConfig sim;
    sim.replications = reps.value_or(config.mc.replications);
    sim.seed = seed.value_or(config.mc.seed);
    sim.antithetic = config.mc.antithetic;
    sim.threads = threads;
    const bool mc_on = run_mc || config.mc.enabled;
    if (mc_on) sim.validate();

    const auto report = rnpv::run_sweep(config);
    std::cout << rnpv::render_text(report, config.sweep.portfolio_sizes);
    if (!csv_dir.empty()) rnpv::write_csv(report, config.sweep.portfolio_sizes, csv_dir);

    if (run_verify) {
      const auto checks = rnpv::verify(config, mc_on ? std::optional(sim) : std::nullopt);
      std::cout << rnpv::render_verify(checks);
      if (!checks.passed()) {
        for (const auto& name : checks.failures()) std::cerr << "failed check: " << name << '\n';
        return kExitCrossCheck;
      }
    } else if (mc_on) {
      std::cout << rnpv::render_mc(rnpv::run_mc(config, sim), sim);
    }
  } catch (const rnpv::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCrossCheck;
  } catch (const rnpv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
