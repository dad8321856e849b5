#include "mevgame/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "mevgame/fee_model.hpp"
#include "mevgame/oracle.hpp"
#include "mevgame/sandwich.hpp"

namespace mevgame {

namespace {

class Tally {
 public:
  Tally(std::string name, double tolerance) {
    summary_.name = std::move(name);
    summary_.tolerance = tolerance;
  }

  void record(double error) {
    ++summary_.evaluated;
    if (!(error <= summary_.tolerance)) ++summary_.failed;
    if (std::isnan(error) || error > summary_.worst_error) summary_.worst_error = error;
  }

  const CheckSummary& summary() const { return summary_; }

 private:
  CheckSummary summary_;
};

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckSummary& c) { return c.failed == 0; });
}

double relative_error(double a, double b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

RandomCase random_case(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));
  constexpr std::array<double, 3> fees{0.0005, 0.003, 0.01};
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RandomCase c;
  c.market.x = log_uniform(rng, 1e4, 1e8);
  c.market.y = log_uniform(rng, 1e4, 1e8);
  c.market.f = fees[pick(rng)];
  c.market.p = unit(rng);
  c.market.omega = unit(rng);
  c.trader.alpha = log_uniform(rng, 1e-4, 0.5);
  c.trader.s = 0.1 * unit(rng);
  return c;
}

VerifyReport run_verification(int count, std::uint64_t seed) {
  Tally profit("attack_profit", 1e-9);
  Tally binding("slippage_binding", 1e-9);
  Tally sizing("optimal_sizes", 1e-6);
  Tally fees("fees_vs_replay", 1e-9);
  Tally affine("affinity_in_p", 1e-9);

  for (int i = 0; i < count; ++i) {
    const RandomCase rc = random_case(seed, i);
    const MarketConfig& m = rc.market;
    const TraderParams& t = rc.trader;
    const PoolState pool = full_pool(m);

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double victim = 0.1 * pool.x * unit(rng);
    const AttackParams attack{victim, t.s, pool};
    const double cap = max_attack_input(attack);
    const double a = cap * unit(rng);
    const AttackOutcome replay = oracle::replay_attack(pool, victim, a);
    // Profit is a small difference of two amounts of order a; measure against a.
    profit.record(relative_error(attack_profit_closed_form(attack, a), replay.profit, a));

    const double expected = expected_output_no_interference(pool, victim);
    const double got = oracle::replay_attack(pool, victim, cap).victim_output;
    binding.record(relative_error(got, (1.0 - t.s) * expected));

    for (TraderKind kind : {TraderKind::Sophisticated, TraderKind::Retail}) {
      TraderParams tk = t;
      tk.kind = kind;
      const TradePlan closed = optimal_trade(tk, m);
      const TradePlan numeric = oracle::numeric_optimal_plan(tk, m);
      sizing.record(relative_error(closed.input_n, numeric.input_n, 1e-6 * m.x));
      sizing.record(relative_error(closed.input_w, numeric.input_w, 1e-6 * m.x));
    }

    const TradePlan soph = optimal_trade_sophisticated(t, m);
    const TradePlan retail = optimal_trade_retail(t, m);
    const oracle::TradeSizes sizes{soph.input_n, soph.input_w, retail.input_n, retail.input_w};
    const oracle::ReplayResult rep = oracle::replay_sequence(m, t, sizes, true);
    fees.record(relative_error(fee_constructive(m, t).total, rep.fees.total));

    const double f0 = total_fee(m.with_p(0.0), t);
    const double f1 = total_fee(m.with_p(1.0), t);
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
      const double p = k / 20.0;
      const double line = f0 + p * (f1 - f0);
      worst = std::max(worst, relative_error(total_fee(m.with_p(p), t), line, std::max(f0, f1)));
    }
    affine.record(worst);
  }

  VerifyReport report;
  for (const Tally* tally : {&profit, &binding, &sizing, &fees, &affine}) report.checks.push_back(tally->summary());
  return report;
}

}  // namespace mevgame
