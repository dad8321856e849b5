#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mevgame/equilibrium.hpp"
#include "mevgame/oracle.hpp"

namespace mevgame {

/// Linear grid from min to max inclusive; a single step yields {min}.
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct SweepSpec {
  GridAxis alpha{0.002, 0.2, 100};
  GridAxis s{0.002, 0.1, 50};
  std::vector<double> omega{0.01};
  double x = 5'000'000.0;
  double y = 5'000'000.0;
  double f = 0.003;
  std::vector<double> epsilon{0.01, 0.02};
  /// Two-point alpha distribution with spread k around each grid alpha;
  /// homogeneous traders when absent.
  std::optional<double> two_point_k;
};

/// Throws ConfigError naming the offending field.
void validate(const SweepSpec& spec);

/// Parses a JSON sweep configuration. Unknown keys are rejected.
SweepSpec parse_sweep_spec(std::string_view json_text, SweepSpec base = {});

struct SweepRecord {
  double alpha = 0.0;
  double s = 0.0;
  double omega = 0.0;
  EquilibriumVerdict verdict;
  bool clamped = false;        // delta_f is infinite (a corner earns nothing)
  std::string regime;          // FeeRegime label, or "mixed" for heterogeneous cohorts
  bool attack_soph = false;
  bool attack_retail = false;
};

/// Evaluates every grid point: omega outermost, then alpha, then s.
void run_sweep(const SweepSpec& spec, const std::function<void(const SweepRecord&)>& sink);
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// Single grid point evaluation shared by run_sweep.
SweepRecord evaluate_point(const SweepSpec& spec, double alpha, double s, double omega);

inline constexpr std::string_view kSweepCsvHeader =
    "alpha,s,omega,F0,F1,grad_f,delta_f,clamped,nash,regime,attack_soph,attack_retail";

/// Shortest round-trip decimal text; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double value);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRecord& record);

struct FeeComparison {
  FeeBreakdown constructive;
  FeeBreakdown printed;
  FeeBreakdown corrected;
  oracle::ReplayResult replay;
  double printed_divergence = 0.0;    // relative, on the total
  double corrected_divergence = 0.0;  // relative, on the total
  double oracle_divergence = 0.0;     // relative, on the total
};

/// Constructive, closed-form and replayed fees for one liquidity split.
FeeComparison compare_fees(const MarketConfig& market, const TraderParams& trader);

struct EpsilonLine {
  double epsilon = 0.0;
  bool any_split_is_equilibrium = false;  // |delta_f| <= epsilon
  EpsilonVerdict single_lp;               // one LP holding everything at market.p
};

struct PointReport {
  MarketConfig market;
  TraderParams trader;
  double alpha_min_n = 0.0;
  double alpha_min_w = 0.0;
  TradePlan soph_plan;    // at market.p
  TradePlan retail_plan;  // at market.p
  AttackOutcome soph_attack;    // on the merged pool (p = 0)
  AttackOutcome retail_attack;  // on the merged pool (p = 0)
  FeeComparison at_p0;
  FeeComparison at_p1;
  EquilibriumVerdict verdict;
  std::vector<EpsilonLine> epsilon;
  bool closed_form_flag = false;  // corrected closed form diverges above 1e-9
  bool oracle_flag = false;       // oracle replay diverges above 1e-9
};

PointReport run_point(const MarketConfig& market, const TraderParams& trader, const std::vector<double>& epsilon);

std::string point_report_json(const PointReport& report);
void print_point_report(std::ostream& out, const PointReport& report);

/// Row of the attack-size limit table: profit-maximizing front-run versus
/// the slippage-limited one for a victim order.
struct AttackLimitRow {
  double victim_input = 0.0;
  double s = 0.0;
  double max_attack_input = 0.0;
  double profit_at_max_input = 0.0;
  double profit_maximizing_input = 0.0;
  double max_profit = 0.0;
};

std::vector<AttackLimitRow> attack_limit_table(const PoolState& pool_w, const std::vector<double>& slippages,
                                               const std::vector<double>& victim_inputs);

}  // namespace mevgame
