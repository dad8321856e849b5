#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mevgame/errors.hpp"
#include "mevgame/sweep.hpp"

using namespace mevgame;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.alpha = {0.01, 0.2, 6};
  spec.s = {0.005, 0.1, 4};
  spec.omega = {0.0, 0.1};
  return spec;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("grid axes") {
  CHECK(GridAxis{0.5, 0.9, 1}.values() == std::vector<double>{0.5});
  const auto v = GridAxis{0.002, 0.2, 100}.values();
  REQUIRE(v.size() == 100);
  CHECK(v.front() == 0.002);
  CHECK(v.back() == doctest::Approx(0.2));
}

TEST_CASE("a 1x1 sweep equals a direct classification") {
  SweepSpec spec;
  spec.alpha = {0.05, 0.05, 1};
  spec.s = {0.01, 0.01, 1};
  const auto records = run_sweep(spec);
  REQUIRE(records.size() == 1);
  const EquilibriumVerdict v = classify_nash({spec.x, spec.y, spec.f, 0.0, 0.01}, {0.05, 0.01});
  CHECK(records[0].verdict.fee_p0 == v.fee_p0);
  CHECK(records[0].verdict.fee_p1 == v.fee_p1);
  CHECK(records[0].verdict.nash == v.nash);
  CHECK(records[0].regime == "both_attacked");
}

TEST_CASE("ordering, completeness and sign agreement") {
  const auto records = run_sweep(small_spec());
  REQUIRE(records.size() == 6 * 4 * 2);
  CHECK(records[0].omega == 0.0);
  CHECK(records[1].s > records[0].s);
  CHECK(records[4].alpha > records[0].alpha);
  for (const SweepRecord& r : records) {
    const EquilibriumVerdict& v = r.verdict;
    if (v.nash == NashLocation::PoolN) CHECK(v.grad_f > 0.0);
    if (v.nash == NashLocation::PoolW) CHECK(v.grad_f < 0.0);
    if (v.nash != NashLocation::All) CHECK(std::signbit(v.delta_f) == std::signbit(v.grad_f));
    CHECK(r.clamped == std::isinf(v.delta_f));
  }
}

TEST_CASE("CSV output is deterministic") {
  std::ostringstream a, b;
  for (std::ostringstream* out : {&a, &b}) {
    write_csv_header(*out);
    run_sweep(small_spec(), [&](const SweepRecord& r) { write_csv_row(*out, r); });
  }
  CHECK(a.str() == b.str());
  CHECK(count_lines(a.str()) == 1 + 48);
  CHECK(a.str().rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
  SweepRecord r;
  r.alpha = 0.01;
  r.s = 0.02;
  r.verdict = verdict_from_corners(0.0, 3.0);
  r.clamped = true;
  r.regime = "n_only_retail_safe";
  std::ostringstream out;
  write_csv_row(out, r);
  CHECK(out.str() == "0.01,0.02,0,0,3,3,inf,1,pool_n,n_only_retail_safe,0,0\n");
}

TEST_CASE("JSON configuration") {
  const SweepSpec spec = parse_sweep_spec(R"({
    "market": {"x": 1e6, "f": 0.01},
    "alpha": {"min": 0.01, "max": 0.1, "steps": 10},
    "omega": [0.01, 0.1],
    "distribution": {"kind": "two_point", "k": 3}
  })");
  CHECK(spec.x == 1e6);
  CHECK(spec.y == 5e6);
  CHECK(spec.f == 0.01);
  CHECK(spec.alpha.steps == 10);
  CHECK(spec.s.steps == 50);
  CHECK(spec.omega.size() == 2);
  REQUIRE(spec.two_point_k.has_value());
  CHECK(*spec.two_point_k == 3.0);
  CHECK(parse_sweep_spec(R"({"omega": 0.5})").omega == std::vector<double>{0.5});
}

TEST_CASE("configuration errors name the field") {
  const auto field_of = [](const std::string& text) {
    try {
      parse_sweep_spec(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of(R"({"alpha": {"steps": 0}})") == "/alpha/steps");
  CHECK(field_of(R"({"alpha": {"min": 0.0}})") == "/alpha/min");
  CHECK(field_of(R"({"s": {"min": 0.05, "max": 0.01}})") == "/s/max");
  CHECK(field_of(R"({"s": {"max": 1.0}})") == "/s/max");
  CHECK(field_of(R"({"omega": [0.1, 2]})") == "/omega/1");
  CHECK(field_of(R"({"market": {"f": "x"}})") == "/market/f");
  CHECK(field_of(R"({"market": {"z": 1}})") == "/market/z");
  CHECK(field_of(R"({"distribution": {"k": 1}})") == "/distribution/k");
  CHECK(field_of(R"({"alpha": [1]})") == "/alpha");
  CHECK(field_of("{not json") == "/");
  CHECK(field_of("{}") == "none");
}

TEST_CASE("heterogeneous sweep records") {
  SweepSpec spec;
  spec.alpha = {0.05, 0.05, 1};
  spec.s = {0.01, 0.01, 1};
  spec.two_point_k = 1e6;
  const SweepRecord r = run_sweep(spec).front();
  spec.two_point_k.reset();
  const SweepRecord h = run_sweep(spec).front();
  CHECK(r.verdict.nash == h.verdict.nash);
  CHECK(r.verdict.fee_p0 == doctest::Approx(h.verdict.fee_p0).epsilon(1e-6));
}

TEST_CASE("point report") {
  const MarketConfig m{5e6, 5e6, 0.003, 0.3, 0.01};
  const PointReport r = run_point(m, {0.05, 0.01}, {0.01, 0.02});
  const SweepRecord cell = [] {
    SweepSpec spec;
    spec.alpha = {0.05, 0.05, 1};
    spec.s = {0.01, 0.01, 1};
    return run_sweep(spec).front();
  }();
  CHECK(r.verdict.fee_p0 == cell.verdict.fee_p0);
  CHECK(r.verdict.fee_p1 == cell.verdict.fee_p1);
  CHECK_FALSE(r.oracle_flag);
  CHECK_FALSE(r.closed_form_flag);
  REQUIRE(r.epsilon.size() == 2);
  CHECK(r.epsilon[0].any_split_is_equilibrium);

  const auto doc = nlohmann::json::parse(point_report_json(r));
  CHECK(doc["verdict"]["nash"] == "pool_w");
  CHECK(doc["fees_p0"]["oracle"]["regime"] == "both_attacked");
  std::ostringstream text;
  print_point_report(text, r);
  CHECK(text.str().find("nash       pool_w") != std::string::npos);
}

TEST_CASE("no-trading point report is all zero") {
  const PointReport r = run_point({5e6, 5e6, 0.003, 0.5, 0.01}, {0.001, 0.01}, {0.01});
  CHECK(r.verdict.fee_p0 == 0.0);
  CHECK(r.verdict.fee_p1 == 0.0);
  CHECK(r.soph_plan.input_n == 0.0);
  CHECK(r.retail_plan.input_w == 0.0);
  CHECK_FALSE(r.soph_attack.executed);
  CHECK(r.verdict.nash == NashLocation::All);
}

TEST_CASE("attack limit table") {
  const PoolState pool{5e6, 5e6, 0.003};
  const auto rows = attack_limit_table(pool, {0.005, 0.01}, {2e4, 5e4, 1e5});
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].s == 0.005);
  CHECK(rows[3].s == 0.01);
  for (const AttackLimitRow& r : rows) CHECK(r.max_attack_input < r.profit_maximizing_input);
}
