#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mevgame/errors.hpp"
#include "mevgame/sweep.hpp"
#include "mevgame/verify.hpp"

namespace py = pybind11;
using namespace mevgame;

PYBIND11_MODULE(_mevgame, m) {
  m.doc() = "Constant-product pools, sandwich attacks and LP equilibria";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<PoolState>(m, "PoolState")
      .def(py::init([](double x, double y, double f) { return make_pool(x, y, f); }), py::arg("x"), py::arg("y"),
           py::arg("f"))
      .def_readonly("x", &PoolState::x)
      .def_readonly("y", &PoolState::y)
      .def_readonly("f", &PoolState::f)
      .def("__repr__", [](const PoolState& p) {
        std::ostringstream ss;
        ss << "PoolState(x=" << p.x << ", y=" << p.y << ", f=" << p.f << ")";
        return ss.str();
      });

  py::class_<SwapResult>(m, "SwapResult")
      .def_readonly("output", &SwapResult::output)
      .def_readonly("fee_paid", &SwapResult::fee_paid)
      .def_readonly("new_pool", &SwapResult::new_pool);

  m.def("swap_x_for_y", &swap_x_for_y, py::arg("pool"), py::arg("delta_x"));
  m.def("swap_y_for_x", &swap_y_for_x, py::arg("pool"), py::arg("delta_y"));

  py::class_<MarketConfig>(m, "MarketConfig")
      .def(py::init([](double x, double y, double f, double p, double omega) {
             MarketConfig c{x, y, f, p, omega};
             validate(c);
             return c;
           }),
           py::arg("x") = 5e6, py::arg("y") = 5e6, py::arg("f") = 0.003, py::arg("p") = 0.0, py::arg("omega") = 0.01)
      .def_readwrite("x", &MarketConfig::x)
      .def_readwrite("y", &MarketConfig::y)
      .def_readwrite("f", &MarketConfig::f)
      .def_readwrite("p", &MarketConfig::p)
      .def_readwrite("omega", &MarketConfig::omega)
      .def("with_p", &MarketConfig::with_p, py::arg("p"));

  py::enum_<TraderKind>(m, "TraderKind")
      .value("Sophisticated", TraderKind::Sophisticated)
      .value("Retail", TraderKind::Retail);

  py::class_<TraderParams>(m, "TraderParams")
      .def(py::init([](double alpha, double s, TraderKind kind) {
             TraderParams t{alpha, s, kind};
             validate(t);
             return t;
           }),
           py::arg("alpha"), py::arg("s"), py::arg("kind") = TraderKind::Sophisticated)
      .def_readwrite("alpha", &TraderParams::alpha)
      .def_readwrite("s", &TraderParams::s)
      .def_readwrite("kind", &TraderParams::kind);

  py::class_<TradePlan>(m, "TradePlan")
      .def_readonly("input_n", &TradePlan::input_n)
      .def_readonly("input_w", &TradePlan::input_w);

  m.def("alpha_min_n", &alpha_min_n, py::arg("f"));
  m.def("alpha_min_w", &alpha_min_w, py::arg("f"), py::arg("s"));
  m.def("optimal_trade", &optimal_trade, py::arg("trader"), py::arg("market"));

  py::class_<AttackParams>(m, "AttackParams")
      .def(py::init([](double victim_input, double s, const PoolState& pool) {
             AttackParams a{victim_input, s, pool};
             validate(a);
             return a;
           }),
           py::arg("victim_input"), py::arg("s"), py::arg("pool"));

  py::class_<AttackOutcome>(m, "AttackOutcome")
      .def_readonly("attack_input", &AttackOutcome::attack_input)
      .def_readonly("attack_output", &AttackOutcome::attack_output)
      .def_readonly("profit", &AttackOutcome::profit)
      .def_readonly("victim_output", &AttackOutcome::victim_output)
      .def_readonly("executed", &AttackOutcome::executed);

  m.def("attack_profit", &attack_profit_closed_form, py::arg("params"), py::arg("attack_input"));
  m.def("max_attack_input", &max_attack_input, py::arg("params"));
  m.def("min_victim_size", &min_victim_size, py::arg("pool"), py::arg("attack_input") = 0.0);
  m.def("decide_attack", &decide_attack, py::arg("params"));

  py::class_<FeeBreakdown>(m, "FeeBreakdown")
      .def_property_readonly("regime", [](const FeeBreakdown& b) { return std::string(to_string(b.regime)); })
      .def_readonly("fee_n", &FeeBreakdown::fee_n)
      .def_readonly("fee_w_soph", &FeeBreakdown::fee_w_soph)
      .def_readonly("fee_w_retail", &FeeBreakdown::fee_w_retail)
      .def_readonly("total", &FeeBreakdown::total)
      .def_readonly("attack_soph", &FeeBreakdown::attack_soph)
      .def_readonly("attack_retail", &FeeBreakdown::attack_retail);

  m.def("fees", &fee_constructive, py::arg("market"), py::arg("trader"));
  m.def("total_fee", &total_fee, py::arg("market"), py::arg("trader"));

  py::class_<EquilibriumVerdict>(m, "EquilibriumVerdict")
      .def_property_readonly("nash", [](const EquilibriumVerdict& v) { return std::string(to_string(v.nash)); })
      .def_readonly("fee_p0", &EquilibriumVerdict::fee_p0)
      .def_readonly("fee_p1", &EquilibriumVerdict::fee_p1)
      .def_readonly("grad_f", &EquilibriumVerdict::grad_f)
      .def_readonly("delta_f", &EquilibriumVerdict::delta_f);

  m.def("classify_nash", &classify_nash, py::arg("market"), py::arg("trader"));
  m.def(
      "classify_nash_two_point",
      [](const MarketConfig& market, double mean_alpha, double k, double s) {
        return classify_nash_heterogeneous(market, AlphaDistribution::two_point(mean_alpha, k), s);
      },
      py::arg("market"), py::arg("mean_alpha"), py::arg("k"), py::arg("s"));
  m.def(
      "is_epsilon_equilibrium",
      [](const std::vector<std::pair<double, double>>& positions, const MarketConfig& market, const TraderParams& trader,
         double epsilon) {
        std::vector<LPPosition> lps;
        for (const auto& [share, p] : positions) lps.push_back({share, p});
        return is_epsilon_equilibrium(lps, market, trader, epsilon).is_equilibrium;
      },
      py::arg("positions"), py::arg("market"), py::arg("trader"), py::arg("epsilon"),
      "positions: list of (share, p) pairs whose shares sum to 1");

  m.def(
      "sweep_csv",
      [](const std::string& config_json) {
        const SweepSpec spec = parse_sweep_spec(config_json.empty() ? "{}" : config_json);
        std::ostringstream out;
        write_csv_header(out);
        run_sweep(spec, [&](const SweepRecord& r) { write_csv_row(out, r); });
        return out.str();
      },
      py::arg("config_json") = "", "Runs a sweep from a JSON configuration and returns the CSV text.");
  m.def(
      "point_json",
      [](const MarketConfig& market, const TraderParams& trader, const std::vector<double>& epsilon) {
        return point_report_json(run_point(market, trader, epsilon));
      },
      py::arg("market"), py::arg("trader"), py::arg("epsilon") = std::vector<double>{0.01, 0.02});
  m.def(
      "verify",
      [](int count, std::uint64_t seed) { return run_verification(count, seed).passed(); }, py::arg("count") = 100,
      py::arg("seed") = 1);
}
