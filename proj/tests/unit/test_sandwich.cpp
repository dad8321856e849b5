#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mevgame/sandwich.hpp"
#include "test_oracles.hpp"

using namespace mevgame;
using testsupport::rel;

namespace {

// Front-run, victim, back-run through the swap primitives.
double replayed_profit(const PoolState& pool, double victim, double a) {
  const SwapResult front = swap_x_for_y(pool, a);
  const SwapResult mid = swap_x_for_y(front.new_pool, victim);
  return swap_y_for_x(mid.new_pool, front.output).output - a;
}

double victim_output(const PoolState& pool, double victim, double a) {
  return swap_x_for_y(swap_x_for_y(pool, a).new_pool, victim).output;
}

const PoolState kPool{5e6, 5e6, 0.003};

}  // namespace

TEST_CASE("closed-form profit equals the replayed sandwich") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const PoolState pool{testsupport::log_uniform(rng, 1e4, 1e8), testsupport::log_uniform(rng, 1e4, 1e8),
                         testsupport::uniform(rng, 1e-4, 0.02)};
    const AttackParams p{testsupport::uniform(rng, 0.0, 0.1) * pool.x, testsupport::uniform(rng, 0.0, 0.1), pool};
    const double a = testsupport::uniform(rng, 0.0, 1.0) * max_attack_input(p);
    const double want = replayed_profit(pool, p.victim_input, a);
    CHECK(std::abs(attack_profit_closed_form(p, a) - want) <= 1e-9 * std::max(std::abs(want), a));
  }
}

TEST_CASE("profit does not depend on the Y reserve") {
  const AttackParams a{1e5, 0.01, {5e6, 5e6, 0.003}};
  const AttackParams b{1e5, 0.01, {5e6, 3e4, 0.003}};
  CHECK(attack_profit_closed_form(a, 2e4) == doctest::Approx(attack_profit_closed_form(b, 2e4)).epsilon(1e-14));
}

TEST_CASE("analytic slope agrees with a central difference") {
  const AttackParams p{1e5, 0.01, kPool};
  for (double a : {0.0, 1e3, 2.5e4, 1e5, 1e6}) {
    const double h = 1e-3;
    const double lo = std::max(a - h, 0.0);
    const double fd = (attack_profit_closed_form(p, a + h) - attack_profit_closed_form(p, lo)) / (a + h - lo);
    CHECK(attack_profit_slope(p, a) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("minimum profitable victim size") {
  // 50-digit bisection of the a -> 0 profit slope in the victim size:
  // 15090.4066260969468...
  CHECK(rel(min_victim_size(kPool, 0.0), 15090.406626096947) < 1e-13);
  // For a finite front-run the profit crosses zero at the formula value.
  for (double a : {1e2, 1e4, 1e5}) {
    const double cross = testsupport::bisect(
        [&](double d) { return replayed_profit(kPool, d, a); }, 0.0, 10.0 * min_victim_size(kPool, a));
    CHECK(rel(cross, min_victim_size(kPool, a)) < 1e-6);
  }
}

TEST_CASE("slippage-limited attack size") {
  CHECK(max_attack_input({1e5, 0.0, kPool}) == 0.0);
  // 50-digit bisection of the binding condition: 25514.28134325756804...
  CHECK(rel(max_attack_input({1e5, 0.01, kPool}), 25514.281343257568) < 1e-12);
  // With no victim the limit reduces to X (1/sqrt(1 - s) - 1) / (1 - f).
  const double s = 0.01;
  CHECK(rel(max_attack_input({0.0, s, kPool}), kPool.x * (1.0 / std::sqrt(1.0 - s) - 1.0) / (1.0 - kPool.f)) < 1e-12);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const PoolState pool{testsupport::log_uniform(rng, 1e4, 1e8), 1.0, 0.003};
    const AttackParams p{testsupport::uniform(rng, 1e-4, 0.1) * pool.x, testsupport::uniform(rng, 1e-4, 0.2), pool};
    const double a = max_attack_input(p);
    const double expected = swap_x_for_y(pool, p.victim_input).output;
    CHECK(rel(victim_output(pool, p.victim_input, a), (1.0 - p.s) * expected) < 1e-9);
  }
}

TEST_CASE("profit-maximizing attack") {
  const AttackParams p{1e5, 0.01, kPool};
  const AttackOptimum opt = profit_maximizing_attack(p, kPool.x);
  CHECK(opt.attack_input > 0.0);
  CHECK(opt.profit > attack_profit_closed_form(p, 1.01 * opt.attack_input));
  CHECK(opt.profit > attack_profit_closed_form(p, 0.99 * opt.attack_input));
  const double grid = testsupport::dense_argmax([&](double a) { return attack_profit_closed_form(p, a); }, 0.0,
                                                10.0 * kPool.x, 200'001);
  CHECK(rel(opt.attack_input, grid) < 1e-3);
  // A small bound is expanded until the optimum is interior.
  CHECK(rel(profit_maximizing_attack(p, 10.0).attack_input, opt.attack_input) < 1e-12);

  const AttackParams small{1e3, 0.01, kPool};
  const AttackOptimum none = profit_maximizing_attack(small, kPool.x);
  CHECK(none.attack_input == 0.0);
  CHECK(none.profit == 0.0);
}

TEST_CASE("attack decision") {
  const AttackOutcome hit = decide_attack({1e5, 0.01, kPool});
  CHECK(hit.executed);
  CHECK(hit.attack_input == doctest::Approx(max_attack_input({1e5, 0.01, kPool})));
  CHECK(hit.profit > 0.0);
  CHECK(hit.attack_output == doctest::Approx(hit.attack_input + hit.profit));
  CHECK(rel(hit.victim_output, 0.99 * swap_x_for_y(kPool, 1e5).output) < 1e-9);

  const AttackOutcome none = decide_attack({1e5, 0.0, kPool});
  CHECK_FALSE(none.executed);
  CHECK(none.profit == 0.0);
  CHECK(none.victim_output == swap_x_for_y(kPool, 1e5).output);

  CHECK_FALSE(decide_attack({1e4, 0.01, kPool}).executed);  // below min_victim_size
}

TEST_CASE("extraction grows with the slippage tolerance while the limit binds") {
  double last = 0.0;
  for (double s = 0.001; s <= 0.03; s += 0.001) {
    const AttackParams p{2e5, s, kPool};
    REQUIRE(max_attack_input(p) < profit_maximizing_attack(p, kPool.x).attack_input);
    const double profit = attack_profit_closed_form(p, max_attack_input(p));
    CHECK(profit >= last);
    last = profit;
  }
}

TEST_CASE("the attack is capped at the profit maximizer for very loose slippage") {
  const AttackParams p{1.6e4, 0.1, kPool};  // just above min_victim_size
  const double cap = profit_maximizing_attack(p, kPool.x).attack_input;
  REQUIRE(cap < max_attack_input(p));
  CHECK(rel(effective_attack_input(p), cap) < 1e-12);
}
