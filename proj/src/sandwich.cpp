#include "mevgame/sandwich.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mevgame/errors.hpp"

namespace mevgame {

namespace {

constexpr int kMaxBoundDoublings = 200;
constexpr int kBisectionSteps = 2000;

struct ProfitTerms {
  double numerator;
  double denominator;
};

// U^A = N / Q - a with
//   N = (1-f)^2 a (X + (1-f)(a + d))^2
//   Q = X^2 + (2-f)(1-f) X a + (1-f)^3 a (a + d)
ProfitTerms profit_terms(double reserve, double f, double victim, double a) {
  const double g = 1.0 - f;
  const double b = reserve + g * (a + victim);
  return {g * g * a * b * b, reserve * reserve + (2.0 - f) * g * reserve * a + g * g * g * a * (a + victim)};
}

}  // namespace

void validate(const AttackParams& params) {
  validate(params.pool_w);
  if (!(params.victim_input >= 0.0) || !std::isfinite(params.victim_input)) {
    throw std::domain_error("victim input must be finite and >= 0");
  }
  if (!(params.s >= 0.0 && params.s < 1.0)) throw std::domain_error("slippage tolerance must lie in [0, 1)");
}

double attack_profit_closed_form(const AttackParams& params, double attack_input) {
  validate(params);
  if (!(attack_input >= 0.0)) throw std::domain_error("attack input must be >= 0");
  if (attack_input == 0.0) return 0.0;
  const auto [num, den] = profit_terms(params.pool_w.x, params.pool_w.f, params.victim_input, attack_input);
  return num / den - attack_input;
}

double attack_profit_slope(const AttackParams& params, double attack_input) {
  validate(params);
  const double x = params.pool_w.x;
  const double f = params.pool_w.f;
  const double g = 1.0 - f;
  const double a = attack_input;
  const double b = x + g * (a + params.victim_input);
  const auto [num, den] = profit_terms(x, f, params.victim_input, a);
  const double dnum = g * g * (b * b + 2.0 * g * a * b);
  const double dden = (2.0 - f) * g * x + g * g * g * (2.0 * a + params.victim_input);
  return (dnum * den - num * dden) / (den * den) - 1.0;
}

double min_victim_size(const PoolState& pool_w, double attack_input) {
  validate(pool_w);
  if (!(attack_input >= 0.0)) throw std::domain_error("attack input must be >= 0");
  const double g = 1.0 - pool_w.f;
  return pool_w.f * (pool_w.x + attack_input * g) / (g * g);
}

double max_attack_input(const AttackParams& params) {
  validate(params);
  if (params.s == 0.0) return 0.0;
  const double x = params.pool_w.x;
  const double g = 1.0 - params.pool_w.f;
  const double d = params.victim_input;
  const double radicand = d * d * g * g + 4.0 * x * (x + d * g) / (1.0 - params.s);
  const double a = 0.5 * (std::sqrt(radicand) / g - 2.0 * x / g - d);
  return a > 0.0 ? a : 0.0;
}

AttackOptimum profit_maximizing_attack(const AttackParams& params, double search_bound) {
  validate(params);
  if (!(search_bound > 0.0)) throw std::domain_error("search bound must be > 0");

  // A non-positive slope at zero means the profit only falls from there on.
  if (attack_profit_slope(params, 0.0) <= 0.0) return {0.0, 0.0};

  // The profit is concave in the attack size: bisect the analytic slope. The
  // profit itself is too flat near the optimum to locate it to full precision.
  double lo = 0.0;
  double hi = search_bound;
  for (int i = 0; attack_profit_slope(params, hi) > 0.0; ++i, hi *= 2.0) {
    if (i == kMaxBoundDoublings) throw NumericError("profit_maximizing_attack: maximum not bracketed");
    lo = hi;
  }
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (attack_profit_slope(params, mid) > 0.0 ? lo : hi) = mid;
  }
  const double profit = attack_profit_closed_form(params, lo);
  if (!(profit > 0.0)) return {0.0, 0.0};
  return {lo, profit};
}

double effective_attack_input(const AttackParams& params) {
  const double limit = max_attack_input(params);
  if (limit == 0.0) return 0.0;
  // On realistic parameters the profit is still rising at the slippage limit,
  // so the limit binds.
  if (attack_profit_slope(params, limit) > 0.0) return limit;
  return std::min(limit, profit_maximizing_attack(params, limit).attack_input);
}

AttackOutcome decide_attack(const AttackParams& params) {
  validate(params);
  AttackOutcome outcome;
  const PoolState& pool = params.pool_w;
  outcome.victim_output = swap_x_for_y(pool, params.victim_input).output;

  const double attack = effective_attack_input(params);
  if (attack == 0.0) return outcome;
  const double profit = attack_profit_closed_form(params, attack);
  if (!(profit > 0.0)) return outcome;

  const SwapResult front = swap_x_for_y(pool, attack);
  const SwapResult victim = swap_x_for_y(front.new_pool, params.victim_input);
  outcome.executed = true;
  outcome.attack_input = attack;
  outcome.profit = profit;
  outcome.attack_output = attack + profit;
  outcome.victim_output = victim.output;
  return outcome;
}

}  // namespace mevgame
