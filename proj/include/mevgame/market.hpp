#pragma once

#include <optional>

#include "mevgame/cpmm.hpp"

namespace mevgame {

/// Game parameters shared by every player: total reserves across both pools,
/// the common fee, the liquidity fraction `p` placed in the protected pool
/// (Pool N) and the retail share `omega` of the order flow.
struct MarketConfig {
  double x = 0.0;
  double y = 0.0;
  double f = 0.0;
  double p = 0.0;
  double omega = 0.0;

  /// Copy of this configuration with a different liquidity split.
  MarketConfig with_p(double split) const {
    MarketConfig copy = *this;
    copy.p = split;
    return copy;
  }

  double fair_price() const { return y / x; }
};

/// Throws std::domain_error on x, y <= 0, f outside (0, 1), p or omega
/// outside [0, 1].
void validate(const MarketConfig& market);

/// Pool N holds (p x, p y); empty when p == 0.
std::optional<PoolState> pool_n(const MarketConfig& market);
/// Pool W holds ((1 - p) x, (1 - p) y); empty when p == 1.
std::optional<PoolState> pool_w(const MarketConfig& market);

/// Both pools merged into one, i.e. Pool W at p = 0.
PoolState full_pool(const MarketConfig& market);

}  // namespace mevgame
