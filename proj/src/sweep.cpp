#include "mevgame/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>

#include "json.hpp"
#include "mevgame/errors.hpp"

namespace mevgame {

namespace {

using json = nlohmann::json;

constexpr double kAgreementTolerance = 1e-9;

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  return node.get<double>();
}

void check_keys(const json& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) throw ConfigError(path + "/" + key, "unknown field");
  }
}

GridAxis parse_axis(const json& node, const std::string& path, GridAxis axis) {
  check_keys(node, path, {"min", "max", "steps"});
  if (node.contains("min")) axis.min = number_at(node["min"], path + "/min");
  if (node.contains("max")) axis.max = number_at(node["max"], path + "/max");
  if (node.contains("steps")) {
    if (!node["steps"].is_number_integer()) throw ConfigError(path + "/steps", "expected an integer");
    axis.steps = node["steps"].get<int>();
  }
  return axis;
}

std::vector<double> number_list(const json& node, const std::string& path) {
  if (node.is_number()) return {node.get<double>()};
  if (!node.is_array()) throw ConfigError(path, "expected a number or a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number_at(node[i], path + "/" + std::to_string(i)));
  return out;
}

void check_axis(const GridAxis& axis, const std::string& path) {
  if (axis.steps < 1) throw ConfigError(path + "/steps", "must be >= 1");
  if (!(axis.min > 0.0)) throw ConfigError(path + "/min", "must be > 0");
  if (!(axis.max >= axis.min)) throw ConfigError(path + "/max", "must be >= min");
}

json breakdown_json(const FeeBreakdown& b) {
  return {{"regime", to_string(b.regime)}, {"fee_n", b.fee_n},
          {"fee_w_soph", b.fee_w_soph},    {"fee_w_retail", b.fee_w_retail},
          {"total", b.total},              {"attack_soph", b.attack_soph},
          {"attack_retail", b.attack_retail}};
}

json attack_json(const AttackOutcome& a) {
  return {{"executed", a.executed},
          {"attack_input", a.attack_input},
          {"attack_output", a.attack_output},
          {"profit", a.profit},
          {"victim_output", a.victim_output}};
}

// JSON has no infinity; keep the sentinel strings used in the CSV.
json number_json(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

json comparison_json(const FeeComparison& c) {
  double residual = 0.0;
  for (const auto& seq : c.replay.sequences) residual = std::max(residual, std::abs(seq.price_residual));
  return {{"constructive", breakdown_json(c.constructive)},
          {"closed_form_printed", breakdown_json(c.printed)},
          {"closed_form_corrected", breakdown_json(c.corrected)},
          {"oracle", breakdown_json(c.replay.fees)},
          {"printed_divergence", number_json(c.printed_divergence)},
          {"corrected_divergence", number_json(c.corrected_divergence)},
          {"oracle_divergence", number_json(c.oracle_divergence)},
          {"max_price_residual", residual}};
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? min : min + (max - min) * i / (steps - 1);
  }
  return out;
}

void validate(const SweepSpec& spec) {
  check_axis(spec.alpha, "/alpha");
  check_axis(spec.s, "/s");
  if (spec.s.max >= 1.0) throw ConfigError("/s/max", "must be < 1");
  if (spec.omega.empty()) throw ConfigError("/omega", "must not be empty");
  for (std::size_t i = 0; i < spec.omega.size(); ++i) {
    if (!(spec.omega[i] >= 0.0 && spec.omega[i] <= 1.0)) {
      throw ConfigError("/omega/" + std::to_string(i), "must lie in [0, 1]");
    }
  }
  if (!(spec.x > 0.0)) throw ConfigError("/market/x", "must be > 0");
  if (!(spec.y > 0.0)) throw ConfigError("/market/y", "must be > 0");
  if (!(spec.f > 0.0 && spec.f < 1.0)) throw ConfigError("/market/f", "must lie in (0, 1)");
  for (std::size_t i = 0; i < spec.epsilon.size(); ++i) {
    if (!(spec.epsilon[i] >= 0.0)) throw ConfigError("/epsilon/" + std::to_string(i), "must be >= 0");
  }
  if (spec.two_point_k && !(*spec.two_point_k > 1.0)) throw ConfigError("/distribution/k", "must be > 1");
}

SweepSpec parse_sweep_spec(std::string_view json_text, SweepSpec spec) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, "", {"market", "alpha", "s", "omega", "epsilon", "distribution"});
  if (root.contains("market")) {
    const json& m = root["market"];
    check_keys(m, "/market", {"x", "y", "f"});
    if (m.contains("x")) spec.x = number_at(m["x"], "/market/x");
    if (m.contains("y")) spec.y = number_at(m["y"], "/market/y");
    if (m.contains("f")) spec.f = number_at(m["f"], "/market/f");
  }
  if (root.contains("alpha")) spec.alpha = parse_axis(root["alpha"], "/alpha", spec.alpha);
  if (root.contains("s")) spec.s = parse_axis(root["s"], "/s", spec.s);
  if (root.contains("omega")) spec.omega = number_list(root["omega"], "/omega");
  if (root.contains("epsilon")) spec.epsilon = number_list(root["epsilon"], "/epsilon");
  if (root.contains("distribution")) {
    const json& d = root["distribution"];
    check_keys(d, "/distribution", {"kind", "k"});
    const std::string kind = d.value("kind", std::string("two_point"));
    if (kind == "homogeneous") {
      spec.two_point_k.reset();
    } else if (kind == "two_point") {
      if (!d.contains("k")) throw ConfigError("/distribution/k", "required for a two-point distribution");
      spec.two_point_k = number_at(d["k"], "/distribution/k");
    } else {
      throw ConfigError("/distribution/kind", "expected \"homogeneous\" or \"two_point\"");
    }
  }
  validate(spec);
  return spec;
}

SweepRecord evaluate_point(const SweepSpec& spec, double alpha, double s, double omega) {
  const MarketConfig market{spec.x, spec.y, spec.f, 0.0, omega};
  SweepRecord rec;
  rec.alpha = alpha;
  rec.s = s;
  rec.omega = omega;

  const AlphaDistribution dist =
      spec.two_point_k ? AlphaDistribution::two_point(alpha, *spec.two_point_k) : AlphaDistribution::one_point(alpha);
  rec.verdict = classify_nash_heterogeneous(market, dist, s);
  rec.clamped = std::isinf(rec.verdict.delta_f);

  std::optional<FeeRegime> shared;
  bool mixed = false;
  for (const AlphaMass& point : dist.support) {
    const RegimeClassification r = classify_regime(market, TraderParams{point.alpha, s});
    if (shared && *shared != r.regime) mixed = true;
    shared = r.regime;
    rec.attack_soph = rec.attack_soph || r.attack_soph;
    rec.attack_retail = rec.attack_retail || r.attack_retail;
  }
  rec.regime = mixed ? "mixed" : std::string(to_string(*shared));
  return rec;
}

void run_sweep(const SweepSpec& spec, const std::function<void(const SweepRecord&)>& sink) {
  validate(spec);
  const std::vector<double> alphas = spec.alpha.values();
  const std::vector<double> slippages = spec.s.values();
  for (double omega : spec.omega) {
    for (double alpha : alphas) {
      for (double s : slippages) sink(evaluate_point(spec, alpha, s, omega));
    }
  }
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  std::vector<SweepRecord> out;
  run_sweep(spec, [&](const SweepRecord& r) { out.push_back(r); });
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const SweepRecord& r) {
  const EquilibriumVerdict& v = r.verdict;
  out << format_number(r.alpha) << ',' << format_number(r.s) << ',' << format_number(r.omega) << ','
      << format_number(v.fee_p0) << ',' << format_number(v.fee_p1) << ',' << format_number(v.grad_f) << ','
      << format_number(v.delta_f) << ',' << (r.clamped ? 1 : 0) << ',' << to_string(v.nash) << ',' << r.regime
      << ',' << (r.attack_soph ? 1 : 0) << ',' << (r.attack_retail ? 1 : 0) << '\n';
}

FeeComparison compare_fees(const MarketConfig& market, const TraderParams& trader) {
  FeeComparison c;
  c.constructive = fee_constructive(market, trader);
  c.printed = fee_closed_form(market, trader, Transcription::Printed);
  c.corrected = fee_closed_form(market, trader, Transcription::Corrected);
  const TradePlan soph = optimal_trade_sophisticated(trader, market);
  const TradePlan retail = optimal_trade_retail(trader, market);
  const oracle::TradeSizes sizes{soph.input_n, soph.input_w, retail.input_n, retail.input_w};
  c.replay = oracle::replay_sequence(market, trader, sizes, true);
  c.printed_divergence = relative_gap(c.constructive.total, c.printed.total);
  if (std::isnan(c.printed.total)) c.printed_divergence = c.printed.total;
  c.corrected_divergence = relative_gap(c.constructive.total, c.corrected.total);
  c.oracle_divergence = relative_gap(c.constructive.total, c.replay.fees.total);
  return c;
}

PointReport run_point(const MarketConfig& market, const TraderParams& trader, const std::vector<double>& epsilon) {
  validate(market);
  validate(trader);
  PointReport r;
  r.market = market;
  r.trader = trader;
  r.alpha_min_n = alpha_min_n(market.f);
  r.alpha_min_w = alpha_min_w(market.f, trader.s);
  r.soph_plan = optimal_trade_sophisticated(trader, market);
  r.retail_plan = optimal_trade_retail(trader, market);

  const MarketConfig merged = market.with_p(0.0);
  const PoolState pool = full_pool(market);
  r.soph_attack = decide_attack({optimal_trade_sophisticated(trader, merged).input_w, trader.s, pool});
  r.retail_attack = decide_attack({optimal_trade_retail(trader, merged).input_w, trader.s, pool});

  r.at_p0 = compare_fees(market.with_p(0.0), trader);
  r.at_p1 = compare_fees(market.with_p(1.0), trader);
  r.verdict = verdict_from_corners(r.at_p0.constructive.total, r.at_p1.constructive.total);
  for (const FeeComparison* c : {&r.at_p0, &r.at_p1}) {
    r.closed_form_flag = r.closed_form_flag || c->corrected_divergence > kAgreementTolerance;
    r.oracle_flag = r.oracle_flag || c->oracle_divergence > kAgreementTolerance;
  }

  const LPPosition whole{1.0, market.p};
  for (double eps : epsilon) {
    EpsilonLine line;
    line.epsilon = eps;
    line.any_split_is_equilibrium = std::abs(r.verdict.delta_f) <= eps;
    line.single_lp = is_epsilon_equilibrium(std::span<const LPPosition>(&whole, 1), market, trader, eps);
    r.epsilon.push_back(line);
  }
  return r;
}

std::string point_report_json(const PointReport& r) {
  json eps = json::array();
  for (const EpsilonLine& line : r.epsilon) {
    eps.push_back({{"epsilon", line.epsilon},
                   {"any_split_is_equilibrium", line.any_split_is_equilibrium},
                   {"single_lp_is_equilibrium", line.single_lp.is_equilibrium},
                   {"single_lp_ratio", number_json(line.single_lp.worst_ratio)}});
  }
  const json out = {
      {"market", {{"x", r.market.x}, {"y", r.market.y}, {"f", r.market.f}, {"p", r.market.p}, {"omega", r.market.omega}}},
      {"trader", {{"alpha", r.trader.alpha}, {"s", r.trader.s}}},
      {"alpha_min_n", r.alpha_min_n},
      {"alpha_min_w", r.alpha_min_w},
      {"sophisticated_plan", {{"input_n", r.soph_plan.input_n}, {"input_w", r.soph_plan.input_w}}},
      {"retail_plan", {{"input_n", r.retail_plan.input_n}, {"input_w", r.retail_plan.input_w}}},
      {"sophisticated_attack", attack_json(r.soph_attack)},
      {"retail_attack", attack_json(r.retail_attack)},
      {"fees_p0", comparison_json(r.at_p0)},
      {"fees_p1", comparison_json(r.at_p1)},
      {"verdict",
       {{"nash", to_string(r.verdict.nash)},
        {"F0", r.verdict.fee_p0},
        {"F1", r.verdict.fee_p1},
        {"grad_f", r.verdict.grad_f},
        {"delta_f", number_json(r.verdict.delta_f)}}},
      {"epsilon", eps},
      {"closed_form_divergence_flag", r.closed_form_flag},
      {"oracle_divergence_flag", r.oracle_flag},
  };
  return out.dump(2);
}

void print_point_report(std::ostream& out, const PointReport& r) {
  out << "market     x=" << format_number(r.market.x) << " y=" << format_number(r.market.y)
      << " f=" << format_number(r.market.f) << " p=" << format_number(r.market.p)
      << " omega=" << format_number(r.market.omega) << '\n';
  out << "trader     alpha=" << format_number(r.trader.alpha) << " s=" << format_number(r.trader.s) << '\n';
  out << "thresholds alpha_min_n=" << format_number(r.alpha_min_n) << " alpha_min_w=" << format_number(r.alpha_min_w)
      << '\n';
  out << "plans      sophisticated N=" << format_number(r.soph_plan.input_n)
      << " W=" << format_number(r.soph_plan.input_w) << "  retail N=" << format_number(r.retail_plan.input_n)
      << " W=" << format_number(r.retail_plan.input_w) << '\n';
  for (const auto& [label, a] : {std::pair{"sophisticated", &r.soph_attack}, std::pair{"retail", &r.retail_attack}}) {
    out << "attack     " << label << ": " << (a->executed ? "executed" : "none");
    if (a->executed) out << " input=" << format_number(a->attack_input) << " profit=" << format_number(a->profit);
    out << '\n';
  }
  for (const auto& [label, c] : {std::pair{"p=0", &r.at_p0}, std::pair{"p=1", &r.at_p1}}) {
    out << "fees " << label << "   regime=" << to_string(c->constructive.regime)
        << " total=" << format_number(c->constructive.total) << " (N " << format_number(c->constructive.fee_n)
        << ", W soph " << format_number(c->constructive.fee_w_soph) << ", W retail "
        << format_number(c->constructive.fee_w_retail) << ")\n";
    out << "           oracle gap=" << format_number(c->oracle_divergence)
        << " closed-form gap=" << format_number(c->corrected_divergence)
        << " printed closed-form gap=" << format_number(c->printed_divergence) << '\n';
  }
  out << "nash       " << to_string(r.verdict.nash) << " grad_f=" << format_number(r.verdict.grad_f)
      << " delta_f=" << format_number(r.verdict.delta_f) << '\n';
  for (const EpsilonLine& line : r.epsilon) {
    out << "epsilon    " << format_number(line.epsilon) << ": every split stable="
        << (line.any_split_is_equilibrium ? "yes" : "no") << ", LP at p=" << format_number(r.market.p)
        << " stable=" << (line.single_lp.is_equilibrium ? "yes" : "no")
        << " (ratio " << format_number(line.single_lp.worst_ratio) << ")\n";
  }
  out << "checks     oracle " << (r.oracle_flag ? "DIVERGES" : "agrees") << ", closed form "
      << (r.closed_form_flag ? "DIVERGES" : "agrees") << '\n';
}

std::vector<AttackLimitRow> attack_limit_table(const PoolState& pool_w, const std::vector<double>& slippages,
                                               const std::vector<double>& victim_inputs) {
  std::vector<AttackLimitRow> rows;
  for (double s : slippages) {
    for (double victim : victim_inputs) {
      const AttackParams params{victim, s, pool_w};
      AttackLimitRow row;
      row.victim_input = victim;
      row.s = s;
      row.max_attack_input = max_attack_input(params);
      row.profit_at_max_input = attack_profit_closed_form(params, row.max_attack_input);
      const AttackOptimum best = profit_maximizing_attack(params, pool_w.x);
      row.profit_maximizing_input = best.attack_input;
      row.max_profit = best.profit;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mevgame
