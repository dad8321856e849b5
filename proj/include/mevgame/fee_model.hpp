#pragma once

#include <string_view>

#include "mevgame/market.hpp"
#include "mevgame/traders.hpp"

namespace mevgame {

/// Fee regimes of the homogeneous order flow, in the order of the case table:
/// which flows trade in Pool W and which of them get sandwiched.
enum class FeeRegime {
  NoTrading,               // alpha <= alpha_min_n
  PoolNOnlyRetailSafe,     // sophisticated flow avoids Pool W, retail not attacked
  PoolNOnlyRetailAttacked, // sophisticated flow avoids Pool W, retail attacked
  BothUnattacked,          // both flows in Pool W, no profitable attack
  RetailAttacked,          // both flows in Pool W, only retail attacked
  BothAttacked,
};

std::string_view to_string(FeeRegime regime);

/// Per-order fee revenue in Y-tokens. `fee_n` is the Pool N revenue (identical
/// for both flows); the Pool W terms are per sophisticated or retail order.
struct FeeBreakdown {
  FeeRegime regime = FeeRegime::NoTrading;
  double fee_n = 0.0;
  double fee_w_soph = 0.0;
  double fee_w_retail = 0.0;
  double total = 0.0;  // fee_n + (1 - omega) fee_w_soph + omega fee_w_retail
  bool attack_soph = false;
  bool attack_retail = false;
};

struct RegimeClassification {
  FeeRegime regime = FeeRegime::NoTrading;
  bool attack_soph = false;
  bool attack_retail = false;
};

/// Classifies the regime from the alpha thresholds and the attacker's decision
/// on each flow's Pool W order. Attack profitability is scale free, so it is
/// decided once on the merged pool and does not depend on p.
RegimeClassification classify_regime(const MarketConfig& market, const TraderParams& trader);

/// Fees assembled leg by leg from swap primitives: trader and front-run fees
/// on X inputs (valued at y/x), back-run and arbitrage fees on Y inputs. The
/// arbitrage leg returns the Y-tokens the preceding legs removed.
FeeBreakdown fee_constructive(const MarketConfig& market, const TraderParams& trader);

enum class Transcription {
  Printed,    // formulas exactly as published
  Corrected,  // with the known transcription errors repaired
};

/// Closed-form fee components under the same regime classification. With
/// Transcription::Printed the two misprinted components are reproduced
/// verbatim; compare against fee_constructive to see the damage.
FeeBreakdown fee_closed_form(const MarketConfig& market, const TraderParams& trader,
                             Transcription transcription = Transcription::Printed);

/// Total fee per order, from the constructive computation.
double total_fee(const MarketConfig& market, const TraderParams& trader);

/// One liquidity provider: share `share` of all liquidity, fraction `p` of it
/// in Pool N.
struct LPPosition {
  double share = 1.0;
  double p = 0.0;
};

void validate(const LPPosition& position);

/// Fees earned by one LP: share * F evaluated at the LP's own split. The
/// `market.p` field is ignored.
double lp_fee(const LPPosition& position, const MarketConfig& market, const TraderParams& trader);

}  // namespace mevgame
