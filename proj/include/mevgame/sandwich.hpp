#pragma once

#include "mevgame/cpmm.hpp"

namespace mevgame {

/// A victim order in the unprotected pool as seen by a sandwich attacker.
struct AttackParams {
  double victim_input = 0.0;  // X-tokens the victim sells
  double s = 0.0;             // victim slippage tolerance, [0, 1)
  PoolState pool_w;
};

void validate(const AttackParams& params);

struct AttackOutcome {
  double attack_input = 0.0;   // front-run size, X-tokens
  double attack_output = 0.0;  // X-tokens recovered by the back-run
  double profit = 0.0;         // attack_output - attack_input
  double victim_output = 0.0;  // Y-tokens the victim actually receives
  bool executed = false;
};

/// Attacker profit in X-tokens for a front-run of `attack_input`, assuming the
/// back-run sells everything the front-run bought (fee charged on that input).
/// Depends on the pool only through its X reserve and fee.
double attack_profit_closed_form(const AttackParams& params, double attack_input);

/// d(profit)/d(attack_input), analytic.
double attack_profit_slope(const AttackParams& params, double attack_input);

/// Victim size above which a front-run of `attack_input` is profitable:
/// f (X_W + (1 - f) a) / (1 - f)^2.
double min_victim_size(const PoolState& pool_w, double attack_input);

/// Largest front-run that still lets the victim's order clear its slippage
/// limit. Zero when s == 0.
double max_attack_input(const AttackParams& params);

struct AttackOptimum {
  double attack_input = 0.0;
  double profit = 0.0;
};

/// Unconstrained profit-maximizing front-run size: the zero of the analytic
/// slope, bracketed from [0, search_bound] with the bound doubling as needed.
/// Returns {0, 0} when no positive-profit attack exists.
AttackOptimum profit_maximizing_attack(const AttackParams& params, double search_bound);

/// Front-run size an attacker would use: max_attack_input, capped at the
/// profit maximizer when the profit already falls at the slippage limit.
double effective_attack_input(const AttackParams& params);

/// The attacker's decision: front-run with min(max_attack_input, a*) if that is
/// strictly profitable, otherwise leave the victim alone.
AttackOutcome decide_attack(const AttackParams& params);

}  // namespace mevgame
