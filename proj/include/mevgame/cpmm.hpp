#pragma once

#include <utility>

namespace mevgame {

/// Reserves and fee of a single constant-product pool (one tick). Fee tokens
/// are held outside the reserves, so every swap preserves x * y exactly.
struct PoolState {
  double x = 0.0;  // X-token reserve
  double y = 0.0;  // Y-token reserve
  double f = 0.0;  // fee fraction charged on the input amount
};

/// Throws std::domain_error unless x > 0, y > 0 and 0 < f < 1.
PoolState make_pool(double x, double y, double f);
void validate(const PoolState& pool);

/// Price of one X-token in Y-tokens, y / x.
inline double marginal_price(const PoolState& pool) { return pool.y / pool.x; }

struct SwapResult {
  double output = 0.0;    // tokens received by the trader
  double fee_paid = 0.0;  // input-token units retained as fee
  PoolState new_pool;
};

/// Output of selling `amount` into reserves (in_reserve, out_reserve) with fee
/// f, evaluated in T. The swaps below use T = double; the oracle also
/// evaluates it in extended precision.
template <class T>
T swap_output(T in_reserve, T out_reserve, T f, T amount) {
  const T effective = (T(1) - f) * amount;
  return out_reserve * effective / (in_reserve + effective);
}

/// Reserve pair (in, out) after the same swap. The out reserve is formed as a
/// ratio so the product stays exact to rounding even when the swap drains it.
template <class T>
std::pair<T, T> reserves_after_swap(T in_reserve, T out_reserve, T f, T amount) {
  const T new_in = in_reserve + (T(1) - f) * amount;
  return {new_in, out_reserve * (in_reserve / new_in)};
}

/// Sells `delta_x` X-tokens into the pool. Only (1 - f) * delta_x enters the
/// reserves; the output is y (1 - f) dx / (x + (1 - f) dx).
SwapResult swap_x_for_y(const PoolState& pool, double delta_x);

/// Mirror of swap_x_for_y: sells `delta_y` Y-tokens for X-tokens.
SwapResult swap_y_for_x(const PoolState& pool, double delta_y);

/// Output the trader expects when nothing executes before their order.
double expected_output_no_interference(const PoolState& pool, double delta_x);

/// Smallest output a trade with slippage tolerance `s` accepts, (1 - s) * expected.
double min_acceptable_output(double expected, double s);

}  // namespace mevgame
