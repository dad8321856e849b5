#include "mevgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mevgame {

namespace {

constexpr double kFlatGradient = 1e-12;
constexpr double kShareSumTolerance = 1e-12;
constexpr double kMassSumTolerance = 1e-12;

template <typename FeeAt>
EpsilonVerdict epsilon_check(std::span<const LPPosition> positions, FeeAt fee_at, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::domain_error("epsilon must be >= 0");
  if (positions.empty()) throw std::domain_error("at least one LP position is required");
  double shares = 0.0;
  for (const LPPosition& lp : positions) {
    validate(lp);
    shares += lp.share;
  }
  if (std::abs(shares - 1.0) > kShareSumTolerance) throw std::domain_error("LP shares must sum to 1");

  const double best = std::max(fee_at(0.0), fee_at(1.0));
  EpsilonVerdict out;
  out.worst_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    // The LP's share cancels in the ratio.
    const double current = fee_at(positions[i].p);
    double ratio;
    if (current > 0.0) {
      ratio = best / current;
    } else {
      ratio = best > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_lp = i;
    }
  }
  out.is_equilibrium = out.worst_ratio - 1.0 <= epsilon;
  return out;
}

}  // namespace

std::string_view to_string(NashLocation nash) {
  switch (nash) {
    case NashLocation::PoolN: return "pool_n";
    case NashLocation::PoolW: return "pool_w";
    case NashLocation::All: return "all";
  }
  return "unknown";
}

EquilibriumVerdict verdict_from_corners(double fee_p0, double fee_p1) {
  EquilibriumVerdict out;
  out.fee_p0 = fee_p0;
  out.fee_p1 = fee_p1;
  out.grad_f = fee_p1 - fee_p0;
  if (std::abs(out.grad_f) <= kFlatGradient * std::max({fee_p0, fee_p1, 1.0})) {
    out.nash = NashLocation::All;
    out.delta_f = 0.0;
    return out;
  }
  out.nash = out.grad_f > 0.0 ? NashLocation::PoolN : NashLocation::PoolW;
  const double fee_min = std::min(fee_p0, fee_p1);
  if (fee_min > 0.0) {
    out.delta_f = out.grad_f / fee_min;
  } else {
    out.delta_f = std::copysign(std::numeric_limits<double>::infinity(), out.grad_f);
  }
  return out;
}

EquilibriumVerdict classify_nash(const MarketConfig& market, const TraderParams& trader) {
  return verdict_from_corners(total_fee(market.with_p(0.0), trader), total_fee(market.with_p(1.0), trader));
}

EpsilonVerdict is_epsilon_equilibrium(std::span<const LPPosition> positions, const MarketConfig& market,
                                      const TraderParams& trader, double epsilon) {
  return epsilon_check(positions, [&](double p) { return total_fee(market.with_p(p), trader); }, epsilon);
}

AlphaDistribution AlphaDistribution::one_point(double alpha) { return AlphaDistribution{{{alpha, 1.0}}}; }

AlphaDistribution AlphaDistribution::two_point(double mean, double k) {
  if (!(k > 1.0)) throw std::domain_error("two-point spread k must be > 1");
  return AlphaDistribution{{{(1.0 - 1.0 / k) * mean, 0.5}, {(1.0 + 1.0 / k) * mean, 0.5}}};
}

void validate(const AlphaDistribution& dist) {
  if (dist.support.empty()) throw std::domain_error("alpha distribution has empty support");
  double total = 0.0;
  for (const AlphaMass& point : dist.support) {
    if (!(point.alpha > 0.0)) throw std::domain_error("alpha support values must be > 0");
    if (!(point.mass > 0.0)) throw std::domain_error("alpha masses must be > 0");
    total += point.mass;
  }
  if (std::abs(total - 1.0) > kMassSumTolerance) throw std::domain_error("alpha masses must sum to 1");
}

double expected_fee(const MarketConfig& market, const AlphaDistribution& dist, double s, double p) {
  validate(dist);
  const MarketConfig at_p = market.with_p(p);
  double total = 0.0;
  for (const AlphaMass& point : dist.support) {
    total += point.mass * total_fee(at_p, TraderParams{point.alpha, s});
  }
  return total;
}

EquilibriumVerdict classify_nash_heterogeneous(const MarketConfig& market, const AlphaDistribution& dist, double s) {
  return verdict_from_corners(expected_fee(market, dist, s, 0.0), expected_fee(market, dist, s, 1.0));
}

EpsilonVerdict is_epsilon_equilibrium_heterogeneous(std::span<const LPPosition> positions, const MarketConfig& market,
                                                    const AlphaDistribution& dist, double s, double epsilon) {
  return epsilon_check(positions, [&](double p) { return expected_fee(market, dist, s, p); }, epsilon);
}

}  // namespace mevgame
