#include "mevgame/fee_model.hpp"

#include <cmath>
#include <stdexcept>

#include "mevgame/sandwich.hpp"

namespace mevgame {

namespace {

bool attacked(const PoolState& pool, double victim_input, double s) {
  if (victim_input == 0.0) return false;
  return decide_attack(AttackParams{victim_input, s, pool}).executed;
}

// Trader fee on an X input plus the arbitrage fee on the Y-tokens it removed.
double unattacked_fee(const PoolState& pool, double input, double price) {
  if (input == 0.0) return 0.0;
  const double removed = swap_x_for_y(pool, input).output;
  return pool.f * (input * price + removed);
}

// Front-run and victim pay on their X inputs; back-run and arbitrage together
// return every Y-token the two removed and pay on that.
double attacked_fee(const PoolState& pool, double input, double s, double price) {
  if (input == 0.0) return 0.0;
  const double attack = effective_attack_input(AttackParams{input, s, pool});
  const SwapResult front = swap_x_for_y(pool, attack);
  const SwapResult victim = swap_x_for_y(front.new_pool, input);
  const double removed = front.output + victim.output;
  return pool.f * ((attack + input) * price + removed);
}

double pool_w_fee(const std::optional<PoolState>& pool, double input, double s, bool under_attack, double price) {
  if (!pool || input == 0.0) return 0.0;
  return under_attack ? attacked_fee(*pool, input, s, price) : unattacked_fee(*pool, input, price);
}

void finish(FeeBreakdown& out, double omega) {
  out.total = out.fee_n + (1.0 - omega) * out.fee_w_soph + omega * out.fee_w_retail;
}

}  // namespace

std::string_view to_string(FeeRegime regime) {
  switch (regime) {
    case FeeRegime::NoTrading: return "no_trading";
    case FeeRegime::PoolNOnlyRetailSafe: return "n_only_retail_safe";
    case FeeRegime::PoolNOnlyRetailAttacked: return "n_only_retail_attacked";
    case FeeRegime::BothUnattacked: return "both_unattacked";
    case FeeRegime::RetailAttacked: return "retail_attacked";
    case FeeRegime::BothAttacked: return "both_attacked";
  }
  return "unknown";
}

RegimeClassification classify_regime(const MarketConfig& market, const TraderParams& trader) {
  validate(market);
  validate(trader);
  RegimeClassification out;
  if (trader.alpha <= alpha_min_n(market.f)) return out;

  const MarketConfig merged = market.with_p(0.0);
  const PoolState pool = full_pool(market);
  const double soph_w = optimal_trade_sophisticated(trader, merged).input_w;
  const double retail_w = optimal_trade_retail(trader, merged).input_w;
  out.attack_soph = attacked(pool, soph_w, trader.s);
  out.attack_retail = attacked(pool, retail_w, trader.s);

  if (soph_w == 0.0) {
    out.regime = out.attack_retail ? FeeRegime::PoolNOnlyRetailAttacked : FeeRegime::PoolNOnlyRetailSafe;
  } else if (out.attack_soph) {
    // Retail orders are never smaller than sophisticated ones, and the attack
    // only gets more profitable with victim size.
    if (!out.attack_retail) throw std::logic_error("sophisticated flow attacked while retail flow is not");
    out.regime = FeeRegime::BothAttacked;
  } else {
    out.regime = out.attack_retail ? FeeRegime::RetailAttacked : FeeRegime::BothUnattacked;
  }
  return out;
}

FeeBreakdown fee_constructive(const MarketConfig& market, const TraderParams& trader) {
  const RegimeClassification regime = classify_regime(market, trader);
  FeeBreakdown out;
  out.regime = regime.regime;
  out.attack_soph = regime.attack_soph;
  out.attack_retail = regime.attack_retail;
  if (regime.regime == FeeRegime::NoTrading) return out;

  const double price = market.fair_price();
  const TradePlan soph = optimal_trade_sophisticated(trader, market);
  const TradePlan retail = optimal_trade_retail(trader, market);
  const auto n = pool_n(market);
  const auto w = pool_w(market);

  if (n) out.fee_n = unattacked_fee(*n, soph.input_n, price);
  out.fee_w_soph = pool_w_fee(w, soph.input_w, trader.s, regime.attack_soph, price);
  out.fee_w_retail = pool_w_fee(w, retail.input_w, trader.s, regime.attack_retail, price);
  finish(out, market.omega);
  return out;
}

FeeBreakdown fee_closed_form(const MarketConfig& market, const TraderParams& trader, Transcription transcription) {
  const RegimeClassification regime = classify_regime(market, trader);
  FeeBreakdown out;
  out.regime = regime.regime;
  out.attack_soph = regime.attack_soph;
  out.attack_retail = regime.attack_retail;
  if (regime.regime == FeeRegime::NoTrading) return out;

  const double f = market.f;
  const double s = trader.s;
  const double alpha = trader.alpha;
  const double g = 1.0 - f;
  const double scale_n = market.p * market.y * f;
  const double scale_w = (1.0 - market.p) * market.y * f;
  const bool printed = transcription == Transcription::Printed;

  const double root = std::sqrt((1.0 + alpha) * g);
  const double n1 = std::sqrt((1.0 + alpha) * (1.0 - s) * g);
  const double n2 = std::sqrt((2.0 * n1 * (1.0 + s) + (1.0 - s) * (2.0 + alpha * (1.0 - s) - s) -
                               (1.0 + alpha) * f * (1.0 - s) * (1.0 - s)) /
                              (1.0 - s));
  const double n3 = 0.5 * (root - 3.0 + std::sqrt((root - 1.0) * (root - 1.0) + 4.0 * root / (1.0 - s)));

  const double pool_n_bracket = alpha / root - f / g;
  out.fee_n = scale_n * pool_n_bracket;

  const bool soph_trades_w = regime.regime == FeeRegime::BothUnattacked || regime.regime == FeeRegime::RetailAttacked ||
                             regime.regime == FeeRegime::BothAttacked;
  if (soph_trades_w) {
    if (regime.attack_soph) {
      // Published leading factor is 1 (1 - f); the leg algebra gives 2 (1 - f).
      const double lead = printed ? 1.0 : 2.0;
      out.fee_w_soph = scale_w * (n1 - 3.0 + n2) * (n1 + 1.0 - 2.0 * f + n2) / (lead * g * (n1 - 1.0 + n2));
    } else {
      out.fee_w_soph = scale_w * (n1 - 1.0) * (g + n1) / (g * n1);
    }
  }

  if (regime.attack_retail) {
    out.fee_w_retail = scale_w * (n3 / g + n3 / (1.0 + n3));
  } else if (printed) {
    // Verbatim, including (1 - alpha) where the derivation has (1 + alpha).
    out.fee_w_retail = scale_w * (f + f * alpha - alpha * std::sqrt(g * (1.0 - alpha))) / (g * (1.0 - alpha));
  } else {
    // Same size rule as Pool N with (1 - p) in place of p.
    out.fee_w_retail = scale_w * pool_n_bracket;
  }
  finish(out, market.omega);
  return out;
}

double total_fee(const MarketConfig& market, const TraderParams& trader) {
  return fee_constructive(market, trader).total;
}

void validate(const LPPosition& position) {
  if (!(position.share > 0.0 && position.share <= 1.0)) throw std::domain_error("LP share must lie in (0, 1]");
  if (!(position.p >= 0.0 && position.p <= 1.0)) throw std::domain_error("LP split must lie in [0, 1]");
}

double lp_fee(const LPPosition& position, const MarketConfig& market, const TraderParams& trader) {
  validate(position);
  return position.share * total_fee(market.with_p(position.p), trader);
}

}  // namespace mevgame
