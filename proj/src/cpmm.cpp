#include "mevgame/cpmm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mevgame {

namespace {

void require_input(double amount, const char* name) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw std::domain_error(std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

void validate(const PoolState& pool) {
  if (!(pool.x > 0.0) || !(pool.y > 0.0) || !std::isfinite(pool.x) || !std::isfinite(pool.y)) {
    throw std::domain_error("pool reserves must be finite and > 0");
  }
  if (!(pool.f > 0.0 && pool.f < 1.0)) {
    throw std::domain_error("pool fee must lie in (0, 1)");
  }
}

PoolState make_pool(double x, double y, double f) {
  PoolState pool{x, y, f};
  validate(pool);
  return pool;
}

SwapResult swap_x_for_y(const PoolState& pool, double delta_x) {
  validate(pool);
  require_input(delta_x, "delta_x");
  if (delta_x == 0.0) return {0.0, 0.0, pool};

  const auto [new_x, new_y] = reserves_after_swap(pool.x, pool.y, pool.f, delta_x);
  const double output = swap_output(pool.x, pool.y, pool.f, delta_x);
  return {output, pool.f * delta_x, PoolState{new_x, new_y, pool.f}};
}

SwapResult swap_y_for_x(const PoolState& pool, double delta_y) {
  validate(pool);
  require_input(delta_y, "delta_y");
  if (delta_y == 0.0) return {0.0, 0.0, pool};

  const auto [new_y, new_x] = reserves_after_swap(pool.y, pool.x, pool.f, delta_y);
  const double output = swap_output(pool.y, pool.x, pool.f, delta_y);
  return {output, pool.f * delta_y, PoolState{new_x, new_y, pool.f}};
}

double expected_output_no_interference(const PoolState& pool, double delta_x) {
  return swap_x_for_y(pool, delta_x).output;
}

double min_acceptable_output(double expected, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("slippage tolerance must lie in [0, 1)");
  return (1.0 - s) * expected;
}

}  // namespace mevgame
