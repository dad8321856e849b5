#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mevgame/fee_model.hpp"

namespace mevgame {

enum class NashLocation { PoolN, PoolW, All };

std::string_view to_string(NashLocation nash);

/// Fees are affine in p, so the corner fees F(0) and F(1) decide everything.
struct EquilibriumVerdict {
  NashLocation nash = NashLocation::All;
  double fee_p0 = 0.0;   // F(p = 0)
  double fee_p1 = 0.0;   // F(p = 1)
  double grad_f = 0.0;   // F(1) - F(0)
  double delta_f = 0.0;  // grad_f / min(F(0), F(1)); +-inf when the minimum is 0
};

/// Verdict from the two corner fees. |F(1) - F(0)| <= 1e-12 max(F(0), F(1), 1)
/// counts as a flat gradient (All, delta_f = 0).
EquilibriumVerdict verdict_from_corners(double fee_p0, double fee_p1);

/// `market.p` is ignored.
EquilibriumVerdict classify_nash(const MarketConfig& market, const TraderParams& trader);

struct EpsilonVerdict {
  bool is_equilibrium = true;
  std::size_t worst_lp = 0;    // LP with the largest improvement ratio
  double worst_ratio = 1.0;    // max(F(0), F(1)) / F(p_i); +inf if F(p_i) == 0 < max
};

/// No LP can raise its fees by more than a factor 1 + epsilon by moving all its
/// liquidity to a corner. An LP exactly at 1 + epsilon stays put. Shares must
/// sum to 1 within 1e-12.
EpsilonVerdict is_epsilon_equilibrium(std::span<const LPPosition> positions, const MarketConfig& market,
                                      const TraderParams& trader, double epsilon);

struct AlphaMass {
  double alpha = 0.0;
  double mass = 0.0;
};

/// Discrete distribution of the traders' relative benefit.
struct AlphaDistribution {
  std::vector<AlphaMass> support;

  static AlphaDistribution one_point(double alpha);
  /// Mass 1/2 on (1 - 1/k) mean and (1 + 1/k) mean. Requires k > 1.
  static AlphaDistribution two_point(double mean, double k);
};

/// Throws std::domain_error unless masses are > 0 and sum to 1 within 1e-12
/// and every alpha is > 0.
void validate(const AlphaDistribution& dist);

/// Probability-weighted total fee at liquidity split `p`.
double expected_fee(const MarketConfig& market, const AlphaDistribution& dist, double s, double p);

EquilibriumVerdict classify_nash_heterogeneous(const MarketConfig& market, const AlphaDistribution& dist, double s);

/// is_epsilon_equilibrium for a heterogeneous cohort.
EpsilonVerdict is_epsilon_equilibrium_heterogeneous(std::span<const LPPosition> positions, const MarketConfig& market,
                                                    const AlphaDistribution& dist, double s, double epsilon);

}  // namespace mevgame
