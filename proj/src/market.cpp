#include "mevgame/market.hpp"

#include <cmath>
#include <stdexcept>

namespace mevgame {

void validate(const MarketConfig& market) {
  if (!(market.x > 0.0) || !(market.y > 0.0) || !std::isfinite(market.x) || !std::isfinite(market.y)) {
    throw std::domain_error("market reserves must be finite and > 0");
  }
  if (!(market.f > 0.0 && market.f < 1.0)) throw std::domain_error("fee must lie in (0, 1)");
  if (!(market.p >= 0.0 && market.p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
  if (!(market.omega >= 0.0 && market.omega <= 1.0)) throw std::domain_error("omega must lie in [0, 1]");
}

std::optional<PoolState> pool_n(const MarketConfig& market) {
  validate(market);
  if (market.p == 0.0) return std::nullopt;
  return PoolState{market.p * market.x, market.p * market.y, market.f};
}

std::optional<PoolState> pool_w(const MarketConfig& market) {
  validate(market);
  if (market.p == 1.0) return std::nullopt;
  const double share = 1.0 - market.p;
  return PoolState{share * market.x, share * market.y, market.f};
}

PoolState full_pool(const MarketConfig& market) {
  validate(market);
  return PoolState{market.x, market.y, market.f};
}

}  // namespace mevgame
