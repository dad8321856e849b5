// Command-line front end: single points, grid sweeps, oracle verification and
// the canonical figure CSVs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mevgame/errors.hpp"
#include "mevgame/sweep.hpp"
#include "mevgame/verify.hpp"

using namespace mevgame;
using json = nlohmann::json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct PointFlags {
  std::optional<double> alpha, s, omega, p;
};

struct GridFlags {
  std::optional<double> alpha_min, alpha_max, s_min, s_max;
  std::optional<int> alpha_steps, s_steps;
};

struct CommonFlags {
  std::string config;
  std::optional<double> x, y, f, k;
  std::vector<double> omega;
  std::vector<double> epsilon;
  bool homogeneous = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The config file is a SweepSpec plus an optional "point" section.
SweepSpec load_spec(const CommonFlags& common, json* point_section) {
  SweepSpec spec;
  if (!common.config.empty()) {
    json root;
    try {
      root = json::parse(read_file(common.config));
    } catch (const json::parse_error& e) {
      throw ConfigError("/", std::string("invalid JSON: ") + e.what());
    }
    if (root.is_object() && root.contains("point")) {
      if (point_section) *point_section = root["point"];
      root.erase("point");
    }
    spec = parse_sweep_spec(root.dump(), spec);
  }
  if (common.x) spec.x = *common.x;
  if (common.y) spec.y = *common.y;
  if (common.f) spec.f = *common.f;
  if (!common.omega.empty()) spec.omega = common.omega;
  if (!common.epsilon.empty()) spec.epsilon = common.epsilon;
  if (common.k) spec.two_point_k = *common.k;
  if (common.homogeneous) spec.two_point_k.reset();
  return spec;
}

void apply_grid(const GridFlags& g, SweepSpec& spec) {
  if (g.alpha_min) spec.alpha.min = *g.alpha_min;
  if (g.alpha_max) spec.alpha.max = *g.alpha_max;
  if (g.alpha_steps) spec.alpha.steps = *g.alpha_steps;
  if (g.s_min) spec.s.min = *g.s_min;
  if (g.s_max) spec.s.max = *g.s_max;
  if (g.s_steps) spec.s.steps = *g.s_steps;
}

void add_common(CLI::App* cmd, CommonFlags& c) {
  cmd->add_option("--config", c.config, "JSON configuration file");
  cmd->add_option("--x", c.x, "total X reserve");
  cmd->add_option("--y", c.y, "total Y reserve");
  cmd->add_option("--f", c.f, "pool fee");
  cmd->add_option("--epsilon", c.epsilon, "epsilon values for the epsilon-equilibrium verdicts");
}

int run_point_cmd(const CommonFlags& common, const PointFlags& flags, bool as_json) {
  json section = json::object();
  SweepSpec spec = load_spec(common, &section);
  if (!section.is_object()) throw ConfigError("/point", "expected an object");
  auto read = [&](const char* key, const std::optional<double>& flag, double fallback) {
    if (flag) return *flag;
    if (!section.contains(key)) return fallback;
    if (!section[key].is_number()) throw ConfigError(std::string("/point/") + key, "expected a number");
    return section[key].get<double>();
  };
  for (const auto& [key, value] : section.items()) {
    if (key != "alpha" && key != "s" && key != "omega" && key != "p") throw ConfigError("/point/" + key, "unknown field");
  }
  MarketConfig market{spec.x, spec.y, spec.f, 0.0, spec.omega.front()};
  market.p = read("p", flags.p, 0.0);
  market.omega = read("omega", flags.omega, market.omega);
  TraderParams trader;
  trader.alpha = read("alpha", flags.alpha, 0.05);
  trader.s = read("s", flags.s, 0.01);
  try {
    validate(market);
    validate(trader);
  } catch (const std::domain_error& e) {
    throw ConfigError("/point", e.what());
  }
  const PointReport report = run_point(market, trader, spec.epsilon);
  if (as_json) {
    std::cout << point_report_json(report) << '\n';
  } else {
    print_point_report(std::cout, report);
  }
  return 0;
}

void write_sweep(const SweepSpec& spec, std::ostream& out) {
  write_csv_header(out);
  run_sweep(spec, [&](const SweepRecord& r) { write_csv_row(out, r); });
}

void write_sweep_file(const SweepSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("--out", "cannot write " + path.string());
  write_sweep(spec, out);
}

int run_sweep_cmd(const CommonFlags& common, const GridFlags& grid, const std::string& out_path) {
  SweepSpec spec = load_spec(common, nullptr);
  apply_grid(grid, spec);
  validate(spec);
  if (out_path.empty()) {
    write_sweep(spec, std::cout);
  } else {
    write_sweep_file(spec, out_path);
  }
  return 0;
}

int run_verify_cmd(int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("--n", "must be >= 1");
  const VerifyReport report = run_verification(count, seed);
  for (const CheckSummary& c : report.checks) {
    std::cout << (c.failed == 0 ? "PASS " : "FAIL ") << c.name << " evaluated=" << c.evaluated
              << " failed=" << c.failed << " worst=" << format_number(c.worst_error)
              << " tol=" << format_number(c.tolerance) << '\n';
  }
  return report.passed() ? 0 : kExitNumeric;
}

void write_attack_limits(const SweepSpec& spec, const std::filesystem::path& path) {
  // Victims from just above the profitability threshold up to 20% of the pool.
  const double lo = 1.25 * min_victim_size(make_pool(spec.x, spec.y, spec.f), 0.0);
  const double hi = 0.2 * spec.x;
  std::vector<double> victims;
  for (int i = 0; i < 50; ++i) victims.push_back(lo + (hi - lo) * i / 49.0);
  const PoolState pool = make_pool(spec.x, spec.y, spec.f);
  std::ofstream out(path);
  if (!out) throw ConfigError("--dir", "cannot write " + path.string());
  out << "victim_input,s,max_attack_input,profit_at_max_input,profit_maximizing_input,max_profit\n";
  for (const AttackLimitRow& r : attack_limit_table(pool, {0.005, 0.01, 0.02, 0.03}, victims)) {
    out << format_number(r.victim_input) << ',' << format_number(r.s) << ',' << format_number(r.max_attack_input)
        << ',' << format_number(r.profit_at_max_input) << ',' << format_number(r.profit_maximizing_input) << ','
        << format_number(r.max_profit) << '\n';
  }
}

int run_figures_cmd(const CommonFlags& common, const GridFlags& grid, const std::string& dir) {
  SweepSpec base = load_spec(common, nullptr);
  apply_grid(grid, base);
  base.two_point_k.reset();
  validate(base);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("--dir", "cannot create " + dir);
  const std::filesystem::path root(dir);

  struct Figure {
    const char* file;
    double omega;
    std::optional<double> k;
  };
  const Figure figures[] = {
      {"fig2a.csv", 0.01, std::nullopt},  {"fig2b.csv", 0.1, std::nullopt},
      {"fig3a.csv", 0.01, std::nullopt},  {"fig3b.csv", 0.1, std::nullopt},
      {"appendixA_k10.csv", 0.01, 10.0},  {"appendixA_k3.csv", 0.01, 3.0},
  };
  for (const Figure& fig : figures) {
    SweepSpec spec = base;
    spec.omega = {fig.omega};
    spec.two_point_k = fig.k;
    write_sweep_file(spec, root / fig.file);
    std::cerr << "wrote " << (root / fig.file).string() << '\n';
  }
  write_attack_limits(base, root / "fig1_attack_limits.csv");
  std::cerr << "wrote " << (root / "fig1_attack_limits.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liquidity allocation under sandwich attacks: equilibrium sweeps"};
  app.require_subcommand(1);

  CommonFlags common;
  PointFlags point;
  GridFlags grid;
  bool as_json = false;
  std::string out_path;
  std::string dir = "figures";
  int count = 200;
  std::uint64_t seed = 1;

  auto* point_cmd = app.add_subcommand("point", "evaluate a single configuration");
  add_common(point_cmd, common);
  point_cmd->add_option("--alpha", point.alpha, "relative benefit");
  point_cmd->add_option("--s", point.s, "slippage tolerance");
  point_cmd->add_option("--omega", point.omega, "retail share of the order flow");
  point_cmd->add_option("--p", point.p, "fraction of liquidity in the protected pool");
  point_cmd->add_flag("--json", as_json, "print JSON instead of text");

  auto add_grid = [&](CLI::App* cmd) {
    add_common(cmd, common);
    cmd->add_option("--alpha-min", grid.alpha_min);
    cmd->add_option("--alpha-max", grid.alpha_max);
    cmd->add_option("--alpha-steps", grid.alpha_steps);
    cmd->add_option("--s-min", grid.s_min);
    cmd->add_option("--s-max", grid.s_max);
    cmd->add_option("--s-steps", grid.s_steps);
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate an (alpha, s) grid and emit CSV");
  add_grid(sweep_cmd);
  sweep_cmd->add_option("--omega", common.omega, "one or more retail shares");
  sweep_cmd->add_option("--k", common.k, "two-point alpha distribution spread (k > 1)");
  sweep_cmd->add_flag("--homogeneous", common.homogeneous, "ignore any distribution in the config");
  sweep_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "check closed forms against the oracle on random configurations");
  verify_cmd->add_option("--n", count, "number of random configurations");
  verify_cmd->add_option("--seed", seed, "random seed");

  auto* figures_cmd = app.add_subcommand("figures", "write the canonical sweep CSVs");
  add_grid(figures_cmd);
  figures_cmd->add_option("--dir", dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*point_cmd) return run_point_cmd(common, point, as_json);
    if (*sweep_cmd) return run_sweep_cmd(common, grid, out_path);
    if (*verify_cmd) return run_verify_cmd(count, seed);
    if (*figures_cmd) return run_figures_cmd(common, grid, dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
