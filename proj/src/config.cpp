#include "rnpv/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

namespace rnpv {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

// Runs `build` and prefixes any validation message with `prefix`.
template <class F>
auto scoped(const std::string& prefix, F&& build) {
  try {
    return build();
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& node, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  if (!node.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(join(path, key), "unknown field");
  }
}

const json& require(const json& node, const std::string& path, const std::string& key) {
  if (!node.contains(key)) fail(join(path, key), "missing required field");
  return node.at(key);
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(path, "value is not finite");
  return v;
}

long long integer(const json& node, const std::string& path) {
  if (!node.is_number_integer()) fail(path, "expected an integer");
  return node.get<long long>();
}

// A scalar expands to `length` copies; an array must hold at least `length` numbers
// (exactly `length` when `exact`).
std::vector<double> sequence(const json& node, const std::string& path, std::size_t length,
                             bool exact = true) {
  if (node.is_number()) return std::vector<double>(length, number(node, path));
  if (!node.is_array()) fail(path, "expected a number or an array of numbers");
  if (exact ? node.size() != length : node.size() < length) {
    fail(path, "expected " + std::string(exact ? "" : "at least ") + std::to_string(length) +
                   " entries, got " + std::to_string(node.size()));
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

LoanSpec read_loan(const json& node) {
  const std::string path = "loan";
  check_keys(node, path, {"principal", "term", "instalment", "instalments", "prepayment_charge"});
  const double principal = number(require(node, path, "principal"), "loan.principal");

  std::vector<double> instalments;
  if (node.contains("instalments")) {
    if (node.contains("instalment")) fail("loan.instalment", "conflicts with loan.instalments");
    const auto& arr = node.at("instalments");
    if (!arr.is_array()) fail("loan.instalments", "expected an array of numbers");
    instalments = sequence(arr, "loan.instalments", arr.size());
    if (node.contains("term") &&
        integer(node.at("term"), "loan.term") != static_cast<long long>(instalments.size())) {
      fail("loan.term", "does not match the number of instalments");
    }
  } else {
    const long long term = integer(require(node, path, "term"), "loan.term");
    if (term < 1 || term > 100000) fail("loan.term", "must be in [1, 100000]");
    instalments = std::vector<double>(static_cast<std::size_t>(term),
                                      number(require(node, path, "instalment"), "loan.instalment"));
  }

  const std::size_t n = instalments.size();
  std::vector<double> charges;
  if (node.contains("prepayment_charge")) {
    charges = sequence(node.at("prepayment_charge"), "loan.prepayment_charge", n == 0 ? 0 : n - 1);
  }
  return scoped("loan.", [&] { return LoanSpec(principal, instalments, charges); });
}

MarketModel read_market(const json& node, std::size_t n) {
  const std::string path = "market";
  check_keys(node, path, {"initial_state", "persist_bad", "persist_good"});
  MarketState initial = MarketState::bad;
  if (node.contains("initial_state")) {
    const auto& s = node.at("initial_state");
    if (!s.is_string()) fail("market.initial_state", "expected \"B\" or \"G\"");
    const auto parsed = parse_market_state(s.get<std::string>());
    if (!parsed) fail("market.initial_state", "expected \"B\" or \"G\"");
    initial = *parsed;
  }
  auto b = sequence(require(node, path, "persist_bad"), "market.persist_bad", n, false);
  auto g = sequence(require(node, path, "persist_good"), "market.persist_good", n, false);
  return scoped("market.", [&] { return MarketModel(initial, std::move(b), std::move(g)); });
}

HazardModel read_hazards(const json& node, std::size_t n) {
  const std::string path = "hazards";
  check_keys(node, path, {"default_bad", "default_good", "prepay_bad", "prepay_good"});
  auto lb = sequence(require(node, path, "default_bad"), "hazards.default_bad", n);
  auto lg = sequence(require(node, path, "default_good"), "hazards.default_good", n);
  std::vector<double> mb(n - 1, 0.0);
  std::vector<double> mg(n - 1, 0.0);
  if (node.contains("prepay_bad")) mb = sequence(node.at("prepay_bad"), "hazards.prepay_bad", n - 1);
  if (node.contains("prepay_good")) {
    mg = sequence(node.at("prepay_good"), "hazards.prepay_good", n - 1);
  }
  return scoped("hazards.", [&] { return HazardModel(lb, lg, mb, mg); });
}

RecoveryLaw read_law(const json& node, const std::string& path) {
  check_keys(node, path, {"mean", "sd", "second_moment", "beta", "point"});
  const std::string prefix = path + ": ";
  if (node.contains("beta")) {
    const auto& beta = node.at("beta");
    check_keys(beta, path + ".beta", {"a", "b"});
    const double a = number(require(beta, path + ".beta", "a"), path + ".beta.a");
    const double b = number(require(beta, path + ".beta", "b"), path + ".beta.b");
    return scoped(prefix, [&] { return RecoveryLaw::beta(a, b); });
  }
  if (node.contains("point")) {
    const double z = number(node.at("point"), path + ".point");
    return scoped(prefix, [&] { return RecoveryLaw::point(z); });
  }
  const double mean = number(require(node, path, "mean"), path + ".mean");
  if (node.contains("second_moment")) {
    const double second = number(node.at("second_moment"), path + ".second_moment");
    return scoped(prefix, [&] { return RecoveryLaw::moments_only(mean, second); });
  }
  const double sd = number(require(node, path, "sd"), path + ".sd");
  return scoped(prefix, [&] {
    return sd == 0.0 ? RecoveryLaw::point(mean) : RecoveryLaw::from_mean_sd(mean, sd);
  });
}

std::vector<RecoveryLaw> read_laws(const json& node, const std::string& path, std::size_t n) {
  if (node.is_object()) return std::vector<RecoveryLaw>(n, read_law(node, path));
  if (!node.is_array()) fail(path, "expected a recovery law object or an array of them");
  if (node.size() != n) fail(path, "expected " + std::to_string(n) + " entries");
  std::vector<RecoveryLaw> laws;
  laws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    laws.push_back(read_law(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return laws;
}

RecoveryModel read_recovery(const json& node, std::size_t n) {
  check_keys(node, "recovery", {"bad", "good"});
  return RecoveryModel(read_laws(require(node, "recovery", "bad"), "recovery.bad", n),
                       read_laws(require(node, "recovery", "good"), "recovery.good", n));
}

SweepSpec read_sweep(const json& node) {
  check_keys(node, "sweep", {"annual_rates", "portfolio_sizes"});
  SweepSpec sweep;
  const auto& rates = require(node, "sweep", "annual_rates");
  if (!rates.is_array() || rates.empty()) fail("sweep.annual_rates", "expected a nonempty array");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const std::string p = "sweep.annual_rates[" + std::to_string(i) + "]";
    const double r = number(rates[i], p);
    if (r < 0.0) fail(p, "rate must be nonnegative");
    sweep.annual_rates.push_back(r);
  }
  const auto& sizes = require(node, "sweep", "portfolio_sizes");
  if (!sizes.is_array() || sizes.empty()) {
    fail("sweep.portfolio_sizes", "expected a nonempty array");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::string p = "sweep.portfolio_sizes[" + std::to_string(i) + "]";
    const long long m = integer(sizes[i], p);
    if (m < 1) fail(p, "portfolio size must be at least 1");
    sweep.portfolio_sizes.push_back(m);
  }
  return sweep;
}

McSpec read_mc(const json& node) {
  check_keys(node, "mc", {"enabled", "replications", "seed", "antithetic"});
  McSpec mc;
  if (node.contains("enabled")) {
    if (!node.at("enabled").is_boolean()) fail("mc.enabled", "expected true or false");
    mc.enabled = node.at("enabled").get<bool>();
  }
  if (node.contains("replications")) {
    const long long reps = integer(node.at("replications"), "mc.replications");
    if (reps < 2) fail("mc.replications", "must be at least 2");
    mc.replications = static_cast<std::uint64_t>(reps);
  }
  if (node.contains("seed")) {
    const auto& s = node.at("seed");
    if (!s.is_number_unsigned()) fail("mc.seed", "expected a nonnegative integer");
    mc.seed = s.get<std::uint64_t>();
  }
  if (node.contains("antithetic")) {
    if (!node.at("antithetic").is_boolean()) fail("mc.antithetic", "expected true or false");
    mc.antithetic = node.at("antithetic").get<bool>();
  }
  if (mc.antithetic && mc.replications % 2 != 0) {
    fail("mc.replications", "antithetic sampling needs an even count");
  }
  return mc;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ValidationError("parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
  }
  check_keys(root, "config", {"loan", "market", "hazards", "recovery", "sweep", "mc"});

  LoanSpec loan = read_loan(require(root, "", "loan"));
  const auto n = static_cast<std::size_t>(loan.term());
  ScenarioConfig cfg{
      LoanModel{std::move(loan), read_market(require(root, "", "market"), n),
                read_hazards(require(root, "", "hazards"), n),
                read_recovery(require(root, "", "recovery"), n)},
      read_sweep(require(root, "", "sweep")),
      root.contains("mc") ? read_mc(root.at("mc")) : McSpec{}};
  cfg.model.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace rnpv
