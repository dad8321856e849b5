#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mevgame/market.hpp"
#include "mevgame/traders.hpp"

namespace mevgame {

/// One family of agreement checks between the closed forms and the oracle.
struct CheckSummary {
  std::string name;
  double tolerance = 0.0;
  int evaluated = 0;
  int failed = 0;
  double worst_error = 0.0;
};

struct VerifyReport {
  std::vector<CheckSummary> checks;
  bool passed() const;
};

/// Relative gap |a - b| / max(|a|, |b|, floor); zero when both are zero.
double relative_error(double a, double b, double floor = 0.0);

/// Random market: log-uniform reserves in [1e4, 1e8] (y drawn independently),
/// f from {0.0005, 0.003, 0.01}, p and omega uniform on [0, 1].
struct RandomCase {
  MarketConfig market;
  TraderParams trader;
};
RandomCase random_case(std::uint64_t seed, int index);

/// Runs `count` random configurations through the oracle agreement suite:
/// attack profit, slippage binding, optimal sizes, fees and affinity in p.
VerifyReport run_verification(int count, std::uint64_t seed);

}  // namespace mevgame
