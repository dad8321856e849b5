#pragma once

#include "mevgame/market.hpp"

namespace mevgame {

enum class TraderKind { Sophisticated, Retail };

/// A homogeneous trader cohort. Sophisticated traders expect every Pool W
/// order to be sandwiched down to their slippage limit; retail traders ignore
/// attacks altogether.
struct TraderParams {
  double alpha = 0.0;  // relative benefit on Y-tokens, > 0
  double s = 0.0;      // slippage tolerance, [0, 1)
  TraderKind kind = TraderKind::Sophisticated;
};

void validate(const TraderParams& params);

/// Inputs (X-tokens) into Pool N and Pool W.
struct TradePlan {
  double input_n = 0.0;
  double input_w = 0.0;
};

/// Relative benefit at or below which nobody trades in Pool N: f / (1 - f).
double alpha_min_n(double f);

/// Relative benefit at or below which sophisticated traders skip Pool W:
/// (f + s - s f) / ((1 - f)(1 - s)).
double alpha_min_w(double f, double s);

TradePlan optimal_trade_sophisticated(const TraderParams& params, const MarketConfig& market);
TradePlan optimal_trade_retail(const TraderParams& params, const MarketConfig& market);
/// Dispatches on params.kind.
TradePlan optimal_trade(const TraderParams& params, const MarketConfig& market);

/// Utility in Y-tokens at the fair price: benefit (1 + alpha) on tokens
/// received minus the fair value of tokens given up. The Pool W leg counts
/// only (1 - s) of the unattacked output.
double utility_sophisticated(const TradePlan& plan, const TraderParams& params, const MarketConfig& market);

/// As utility_sophisticated, but both legs use the unattacked output.
double utility_retail(const TradePlan& plan, const TraderParams& params, const MarketConfig& market);

}  // namespace mevgame
