#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "mevgame/fee_model.hpp"
#include "mevgame/numeric.hpp"
#include "mevgame/sandwich.hpp"

// Brute-force reference engine. Everything here is computed by replaying
// swaps through the constant-product primitives and by direct numerical
// search; none of the closed forms in sandwich, traders or fee_model are used.

namespace mevgame::oracle {

enum class PoolId { N, W };
enum class Flow { Sophisticated, Retail };
enum class LegKind { FrontRun, Victim, BackRun, Arbitrage };

std::string_view to_string(PoolId pool);
std::string_view to_string(Flow flow);
std::string_view to_string(LegKind kind);

struct TradeLeg {
  LegKind kind = LegKind::Victim;
  bool x_to_y = true;
  double input = 0.0;   // in the input token
  double output = 0.0;  // in the output token
  double fee_y = 0.0;   // fee on this leg valued in Y-tokens
};

/// One victim order with its attack (if any) and the closing arbitrage.
struct TradeSequence {
  PoolId pool = PoolId::N;
  Flow flow = Flow::Sophisticated;
  std::vector<TradeLeg> legs;
  PoolState initial;
  PoolState final;
  double fees_y = 0.0;
  /// final marginal price / initial marginal price - 1.
  double price_residual = 0.0;
};

enum class ArbitrageMode {
  /// Arbitrageur sells back exactly the Y-tokens the sequence removed, net of
  /// the back-run input. The fee on that input leaves a small price residual.
  PrintedSize,
  /// Arbitrage input grossed up by 1 / (1 - f) so the reserves are restored.
  ExactRestoration,
};

/// Order sizes per flow and pool, supplied by the caller.
struct TradeSizes {
  double soph_n = 0.0;
  double soph_w = 0.0;
  double retail_n = 0.0;
  double retail_w = 0.0;
};

struct ReplayResult {
  FeeBreakdown fees;  // regime label reflects what was observed in the replay
  AttackOutcome soph_attack;
  AttackOutcome retail_attack;
  std::vector<TradeSequence> sequences;
};

/// Front-run size at which the victim receives exactly (1 - s) of the
/// unattacked output, found by bisection on replays.
double binding_attack_input(const PoolState& pool, double victim_input, double s);

/// Replays front-run, victim and back-run. The back-run sells all Y bought by
/// the front-run.
AttackOutcome replay_attack(const PoolState& pool, double victim_input, double attack_input);

/// Attacker's best response by search: the binding input, or the profit
/// maximizer on [0, binding] if that is smaller. `executed` iff profit > 0.
AttackOutcome search_attack(const PoolState& pool, double victim_input, double s);

/// Replays every order of the homogeneous flow: Pool N victim + arbitrage, and
/// in Pool W optional front-run, victim, optional back-run, arbitrage. With
/// `with_attack` false no attack is attempted.
ReplayResult replay_sequence(const MarketConfig& market, const TraderParams& trader, const TradeSizes& sizes,
                             bool with_attack, ArbitrageMode mode = ArbitrageMode::PrintedSize);

/// Golden-section maximization with dense-scan fallback.
ScalarOptimum numeric_max_utility(const std::function<double(double)>& utility, double lo, double hi);

/// Maximizes a single pool leg (1 + alpha) * haircut * out(d) - (y / x) * d over
/// d >= 0, expanding the bracket from [0, pool.x] until the optimum is interior.
ScalarOptimum numeric_optimal_leg(const PoolState& pool, double alpha, double haircut);

/// Numerically optimal plan for the given trader kind in both pools.
TradePlan numeric_optimal_plan(const TraderParams& trader, const MarketConfig& market);

}  // namespace mevgame::oracle
