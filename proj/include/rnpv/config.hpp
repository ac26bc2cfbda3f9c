#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "rnpv/error.hpp"
#include "rnpv/model.hpp"

namespace rnpv {

struct SweepSpec {
  std::vector<double> annual_rates;
  std::vector<long long> portfolio_sizes;
};

struct McSpec {
  bool enabled = false;
  std::uint64_t replications = 1000000;
  std::uint64_t seed = 20240601;
  bool antithetic = false;
};

struct ScenarioConfig {
  LoanModel model;
  SweepSpec sweep;
  McSpec mc;
};

// JSON-grammar scenario file. Errors carry a line/column (syntax) or the dotted
// path of the offending field (validation), e.g. "hazards.default_bad[3]: ...".
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace rnpv
