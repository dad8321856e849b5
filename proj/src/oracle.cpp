#include "mevgame/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "mevgame/errors.hpp"

namespace mevgame::oracle {

namespace {

constexpr int kBisectionSteps = 400;
constexpr int kMaxExpansions = 200;
constexpr double kArgTolerance = 1e-10;

double victim_output_after(const PoolState& pool, double attack, double victim) {
  const SwapResult front = swap_x_for_y(pool, attack);
  return swap_x_for_y(front.new_pool, victim).output;
}

#if defined(__SIZEOF_FLOAT128__)
using ext = __float128;
#else
using ext = long double;
#endif

// Front-run, victim, back-run replayed in extended precision. The profit is a
// small difference of amounts of order a, too flat in double to locate its
// maximum to the precision the fee comparison needs.
ext replay_profit_extended(const PoolState& pool, double victim, double attack) {
  const ext f = pool.f;
  ext x = pool.x;
  ext y = pool.y;
  const ext bought = swap_output<ext>(x, y, f, attack);
  std::tie(x, y) = reserves_after_swap<ext>(x, y, f, attack);
  std::tie(x, y) = reserves_after_swap<ext>(x, y, f, victim);
  return swap_output<ext>(y, x, f, bought) - attack;
}

// Maximizes an extended-precision objective on [0, hi]. Each pass hands the
// double optimizer values relative to the previous optimum, so a flat top
// keeps its resolution, and shrinks the bracket onto small interior optima
// because the argument tolerance scales with the bracket.
template <class Fn>
ScalarOptimum maximize_extended(const Fn& fn, double hi) {
  constexpr int kPasses = 3;
  ext reference = 0;
  const auto shifted = [&](double z) { return static_cast<double>(fn(z) - reference); };
  ScalarOptimum opt = maximize_scalar(shifted, 0.0, hi, kArgTolerance);
  for (int pass = 0; pass < kPasses; ++pass) {
    while (opt.argmax > 0.0 && 4.0 * opt.argmax < hi) hi = 4.0 * opt.argmax;
    reference = fn(opt.argmax);
    const bool fallback = opt.dense_fallback;
    opt = maximize_scalar(shifted, 0.0, hi, kArgTolerance);
    opt.dense_fallback = opt.dense_fallback || fallback;
  }
  opt.value = static_cast<double>(fn(opt.argmax));
  return opt;
}

struct SequenceBuilder {
  TradeSequence seq;
  PoolState pool;
  double price;  // fair price used to value X-denominated fees
  double removed_y = 0.0;
  double returned_y = 0.0;

  SequenceBuilder(PoolId id, Flow flow, const PoolState& start, double fair_price) : pool(start), price(fair_price) {
    seq.pool = id;
    seq.flow = flow;
    seq.initial = start;
  }

  double sell_x(LegKind kind, double amount) {
    const SwapResult r = swap_x_for_y(pool, amount);
    const double fee = r.fee_paid * price;
    seq.legs.push_back({kind, true, amount, r.output, fee});
    seq.fees_y += fee;
    removed_y += r.output;
    pool = r.new_pool;
    return r.output;
  }

  double sell_y(LegKind kind, double amount) {
    const SwapResult r = swap_y_for_x(pool, amount);
    seq.legs.push_back({kind, false, amount, r.output, r.fee_paid});
    seq.fees_y += r.fee_paid;
    returned_y += amount;
    pool = r.new_pool;
    return r.output;
  }

  void arbitrage(ArbitrageMode mode) {
    double amount = 0.0;
    if (mode == ArbitrageMode::PrintedSize) {
      amount = removed_y - returned_y;
    } else {
      amount = (seq.initial.y - pool.y) / (1.0 - pool.f);
    }
    if (amount > 0.0) sell_y(LegKind::Arbitrage, amount);
  }

  TradeSequence finish() {
    seq.final = pool;
    seq.price_residual = marginal_price(pool) / marginal_price(seq.initial) - 1.0;
    return std::move(seq);
  }
};

}  // namespace

std::string_view to_string(PoolId pool) { return pool == PoolId::N ? "N" : "W"; }
std::string_view to_string(Flow flow) { return flow == Flow::Sophisticated ? "sophisticated" : "retail"; }
std::string_view to_string(LegKind kind) {
  switch (kind) {
    case LegKind::FrontRun: return "front_run";
    case LegKind::Victim: return "victim";
    case LegKind::BackRun: return "back_run";
    case LegKind::Arbitrage: return "arbitrage";
  }
  return "unknown";
}

double binding_attack_input(const PoolState& pool, double victim_input, double s) {
  validate(pool);
  if (victim_input == 0.0 || s == 0.0) return 0.0;
  const double target = (1.0 - s) * swap_x_for_y(pool, victim_input).output;
  double lo = 0.0;
  double hi = pool.x;
  for (int i = 0; victim_output_after(pool, hi, victim_input) >= target; ++i, hi *= 2.0) {
    if (i == kMaxExpansions) throw NumericError("binding_attack_input: cannot bracket");
  }
  for (int i = 0; i < kBisectionSteps && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (victim_output_after(pool, mid, victim_input) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

AttackOutcome replay_attack(const PoolState& pool, double victim_input, double attack_input) {
  AttackOutcome out;
  const SwapResult front = swap_x_for_y(pool, attack_input);
  const SwapResult victim = swap_x_for_y(front.new_pool, victim_input);
  const SwapResult back = swap_y_for_x(victim.new_pool, front.output);
  out.attack_input = attack_input;
  out.attack_output = back.output;
  out.profit = back.output - attack_input;
  out.victim_output = victim.output;
  out.executed = attack_input > 0.0;
  return out;
}

AttackOutcome search_attack(const PoolState& pool, double victim_input, double s) {
  const double binding = binding_attack_input(pool, victim_input, s);
  AttackOutcome best = replay_attack(pool, victim_input, binding);
  if (binding > 0.0) {
    const auto profit = [&](double a) { return replay_profit_extended(pool, victim_input, a); };
    const ScalarOptimum opt = maximize_extended(profit, binding);
    if (opt.argmax < binding && profit(opt.argmax) > profit(binding)) {
      best = replay_attack(pool, victim_input, opt.argmax);
    }
  }
  if (!(best.profit > 0.0)) {
    AttackOutcome none;
    none.victim_output = swap_x_for_y(pool, victim_input).output;
    return none;
  }
  best.executed = true;
  return best;
}

ReplayResult replay_sequence(const MarketConfig& market, const TraderParams& trader, const TradeSizes& sizes,
                             bool with_attack, ArbitrageMode mode) {
  validate(market);
  validate(trader);
  ReplayResult result;
  const double price = market.fair_price();
  const auto n = pool_n(market);
  const auto w = pool_w(market);

  auto pool_n_sequence = [&](Flow flow, double size) -> double {
    if (!n || size == 0.0) return 0.0;
    SequenceBuilder b(PoolId::N, flow, *n, price);
    b.sell_x(LegKind::Victim, size);
    b.arbitrage(mode);
    result.sequences.push_back(b.finish());
    return result.sequences.back().fees_y;
  };

  auto pool_w_sequence = [&](Flow flow, double size, AttackOutcome& attack) -> double {
    if (!w || size == 0.0) return 0.0;
    attack = with_attack ? search_attack(*w, size, trader.s) : AttackOutcome{};
    SequenceBuilder b(PoolId::W, flow, *w, price);
    double bought = 0.0;
    if (attack.executed) bought = b.sell_x(LegKind::FrontRun, attack.attack_input);
    attack.victim_output = b.sell_x(LegKind::Victim, size);
    if (attack.executed) {
      attack.attack_output = b.sell_y(LegKind::BackRun, bought);
      attack.profit = attack.attack_output - attack.attack_input;
    }
    b.arbitrage(mode);
    result.sequences.push_back(b.finish());
    return result.sequences.back().fees_y;
  };

  const double omega = market.omega;
  const double soph_n = pool_n_sequence(Flow::Sophisticated, sizes.soph_n);
  const double retail_n = pool_n_sequence(Flow::Retail, sizes.retail_n);
  FeeBreakdown& fees = result.fees;
  fees.fee_n = (1.0 - omega) * soph_n + omega * retail_n;
  fees.fee_w_soph = pool_w_sequence(Flow::Sophisticated, sizes.soph_w, result.soph_attack);
  fees.fee_w_retail = pool_w_sequence(Flow::Retail, sizes.retail_w, result.retail_attack);
  fees.total = fees.fee_n + (1.0 - omega) * fees.fee_w_soph + omega * fees.fee_w_retail;
  fees.attack_soph = result.soph_attack.executed;
  fees.attack_retail = result.retail_attack.executed;

  const bool any = sizes.soph_n > 0.0 || sizes.soph_w > 0.0 || sizes.retail_n > 0.0 || sizes.retail_w > 0.0;
  if (!any) {
    fees.regime = FeeRegime::NoTrading;
  } else if (sizes.soph_w == 0.0) {
    fees.regime = fees.attack_retail ? FeeRegime::PoolNOnlyRetailAttacked : FeeRegime::PoolNOnlyRetailSafe;
  } else if (fees.attack_soph) {
    fees.regime = FeeRegime::BothAttacked;
  } else {
    fees.regime = fees.attack_retail ? FeeRegime::RetailAttacked : FeeRegime::BothUnattacked;
  }
  return result;
}

ScalarOptimum numeric_max_utility(const std::function<double(double)>& utility, double lo, double hi) {
  return maximize_scalar(utility, lo, hi, kArgTolerance);
}

ScalarOptimum numeric_optimal_leg(const PoolState& pool, double alpha, double haircut) {
  validate(pool);
  // Near the trade threshold the utility is a tiny difference of two amounts
  // of order d, so it is evaluated in extended precision.
  const ext price = ext(pool.y) / ext(pool.x);
  const auto leg = [&](double d) {
    return (ext(1) + alpha) * haircut * swap_output<ext>(pool.x, pool.y, pool.f, d) - price * d;
  };
  double hi = pool.x;
  for (int i = 0; i < kMaxExpansions; ++i, hi *= 2.0) {
    const ScalarOptimum opt = maximize_extended(leg, hi);
    if (opt.argmax < hi * (1.0 - 1e-6)) {
      // A leg that cannot beat doing nothing is not traded.
      if (!(opt.value > 0.0)) return {0.0, 0.0, opt.dense_fallback};
      return opt;
    }
  }
  throw NumericError("numeric_optimal_leg: maximum not bracketed");
}

TradePlan numeric_optimal_plan(const TraderParams& trader, const MarketConfig& market) {
  validate(trader);
  const double haircut_w = trader.kind == TraderKind::Sophisticated ? 1.0 - trader.s : 1.0;
  TradePlan plan;
  if (const auto n = pool_n(market)) plan.input_n = numeric_optimal_leg(*n, trader.alpha, 1.0).argmax;
  if (const auto w = pool_w(market)) plan.input_w = numeric_optimal_leg(*w, trader.alpha, haircut_w).argmax;
  return plan;
}

}  // namespace mevgame::oracle
