#include "mevgame/traders.hpp"

#include <cmath>
#include <stdexcept>

namespace mevgame {

namespace {

void require_fee(double f) {
  if (!(f > 0.0 && f < 1.0)) throw std::domain_error("fee must lie in (0, 1)");
}

void require_slippage(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("slippage tolerance must lie in [0, 1)");
}

// Size maximizing (1 + alpha) * k * out(d) - P * d in a pool with X reserve
// `reserve`, where k in (0, 1] discounts the output: reserve (sqrt((1+alpha) k (1-f)) - 1) / (1-f).
double optimal_size(double reserve, double alpha, double haircut, double f) {
  const double root = std::sqrt((1.0 + alpha) * haircut * (1.0 - f));
  // Just above a threshold the product can round below 1.
  return root > 1.0 ? reserve * (root - 1.0) / (1.0 - f) : 0.0;
}

double leg_output(const std::optional<PoolState>& pool, double input) {
  if (input == 0.0) return 0.0;
  if (!pool) throw std::domain_error("trade routed to an empty pool");
  return swap_x_for_y(*pool, input).output;
}

double utility(const TradePlan& plan, const TraderParams& params, const MarketConfig& market, double haircut_w) {
  validate(params);
  validate(market);
  if (!(plan.input_n >= 0.0) || !(plan.input_w >= 0.0)) throw std::domain_error("trade inputs must be >= 0");
  const double price = market.fair_price();
  const double benefit = 1.0 + params.alpha;
  const double out_n = leg_output(pool_n(market), plan.input_n);
  const double out_w = leg_output(pool_w(market), plan.input_w);
  return benefit * out_n - price * plan.input_n + benefit * haircut_w * out_w - price * plan.input_w;
}

}  // namespace

void validate(const TraderParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) throw std::domain_error("alpha must be finite and > 0");
  require_slippage(params.s);
}

double alpha_min_n(double f) {
  require_fee(f);
  return f / (1.0 - f);
}

double alpha_min_w(double f, double s) {
  require_fee(f);
  require_slippage(s);
  return (f + s - s * f) / ((1.0 - f) * (1.0 - s));
}

TradePlan optimal_trade_sophisticated(const TraderParams& params, const MarketConfig& market) {
  validate(params);
  validate(market);
  TradePlan plan;
  // Thresholds are checked explicitly: at alpha == threshold the root is 1
  // only up to rounding.
  if (params.alpha > alpha_min_n(market.f)) {
    plan.input_n = optimal_size(market.p * market.x, params.alpha, 1.0, market.f);
  }
  if (params.alpha > alpha_min_w(market.f, params.s)) {
    plan.input_w = optimal_size((1.0 - market.p) * market.x, params.alpha, 1.0 - params.s, market.f);
  }
  return plan;
}

TradePlan optimal_trade_retail(const TraderParams& params, const MarketConfig& market) {
  validate(params);
  validate(market);
  TradePlan plan;
  if (params.alpha > alpha_min_n(market.f)) {
    plan.input_n = optimal_size(market.p * market.x, params.alpha, 1.0, market.f);
    plan.input_w = optimal_size((1.0 - market.p) * market.x, params.alpha, 1.0, market.f);
  }
  return plan;
}

TradePlan optimal_trade(const TraderParams& params, const MarketConfig& market) {
  return params.kind == TraderKind::Sophisticated ? optimal_trade_sophisticated(params, market)
                                                  : optimal_trade_retail(params, market);
}

double utility_sophisticated(const TradePlan& plan, const TraderParams& params, const MarketConfig& market) {
  return utility(plan, params, market, 1.0 - params.s);
}

double utility_retail(const TradePlan& plan, const TraderParams& params, const MarketConfig& market) {
  return utility(plan, params, market, 1.0);
}

}  // namespace mevgame
