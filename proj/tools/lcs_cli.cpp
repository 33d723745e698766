// Command-line front end: scenario evaluation, optimizers, figure sweeps as CSV,
// the reference table and the self-verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 quadrature did not converge.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "lcs/csv.hpp"
#include "lcs/scenario.hpp"
#include "lcs/studies.hpp"
#include "lcs/verify.hpp"

namespace {

using namespace lcs;

constexpr int kVerificationFailure = 1;
constexpr int kConfigError = 2;
constexpr int kConvergenceError = 3;

TimingMode parse_timing(const std::string& s) {
  if (s == "nominal") return TimingMode::nominal;
  if (s == "corrected") return TimingMode::corrected;
  throw InvalidParameter("--timing must be nominal or corrected");
}

void print_result(const std::string& label, const FidelityResult& r) {
  std::cout << label << ' ' << format_number(r.value) << '\n'
            << "standard_error " << format_number(r.standard_error) << '\n'
            << "method " << to_string(r.method) << '\n';
  if (r.method == IntegrationMethod::montecarlo) {
    std::cout << "samples " << r.samples << '\n';
  } else if (r.nodes > 0) {
    std::cout << "hermite_order " << r.nodes << '\n';
  }
}

void print_optimum(const Optimum& o, const std::vector<std::string>& names, const std::vector<double>& scales) {
  for (std::size_t k = 0; k < o.location.size(); ++k) {
    std::cout << names[k] << ' ' << format_number(o.location[k] * scales[k]) << '\n';
  }
  std::cout << "value " << format_number(o.value) << '\n';
  for (std::size_t k = 0; k < o.resolution.size(); ++k) {
    std::cout << "resolution_" << names[k] << ' ' << format_number(o.resolution[k] * scales[k]) << '\n';
  }
  if (o.tolerance > 0.0) std::cout << "tolerance " << format_number(o.tolerance * scales[0]) << '\n';
  if (o.flat) {
    std::cout << "flat_interval " << format_number(o.interval.first * scales[0]) << ' '
              << format_number(o.interval.second * scales[0]) << '\n';
  }
  if (!o.warning.empty()) std::cerr << "warning: " << o.warning << '\n';
}

void emit_csv(const SweepGrid& grid, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, grid.to_csv());
    return;
  }
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write " + path);
  write_csv(out, grid.to_csv());
}

// One-axis sweep of an arbitrary cell function.
template <typename F>
SweepGrid sweep_1d(const Axis& axis, std::vector<std::string> outputs, F&& cell) {
  SweepGrid g;
  g.axes = {axis};
  g.outputs = std::move(outputs);
  for (int i = 0; i < axis.points; ++i) g.cells.push_back(cell(axis.si(i)));
  return g;
}

// ---------------------------------------------------------------- figures

struct FigureContext {
  std::optional<Scenario> scenario;
  IntegrationOptions integration;

  DeviceParams::Emitter emitter(DeviceParams::Emitter fallback) const {
    return scenario ? scenario->params.emitter() : fallback;
  }
  DeviceParams params(DeviceParams::Emitter fallback, double t_lg) const {
    return scenario ? scenario->params : DeviceParams::from_larmor_period(fallback, t_lg);
  }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

SweepGrid figure_lifetime(const FigureContext& ctx) {
  const double t_lg = 10e-9;
  const double g = ctx.scenario ? ctx.scenario->params.g_ratio() : -1.0;
  const Axis axis = Axis::linear("tau_d", "tlg", 0.0, 0.2, 50, t_lg);
  SweepGrid grid = sweep_1d(axis, {"gate_nominal", "gate_corrected"}, [&](double tau) {
    const auto p = DeviceParams::from_larmor_period({tau, 0.0, kInf, g}, t_lg);
    return std::vector<double>{evaluate_gate(p, TimingMode::nominal, ctx.integration).fidelity.value,
                               evaluate_gate(p, TimingMode::corrected, ctx.integration).fidelity.value};
  });
  grid.fixed = {{"g_ratio", g}};
  return grid;
}

SweepGrid figure_coherence(const FigureContext& ctx) {
  const double t_lg = 10e-9;
  const Axis axis = Axis::logarithmic("t2_star", "tlg", 0.01, 10.0, 61, t_lg);
  return sweep_1d(axis, {"gate_fidelity"}, [&](double t2) {
    const auto p = DeviceParams::from_larmor_period({0.0, 0.0, t2, 0.0}, t_lg);
    return std::vector<double>{evaluate_gate(p, TimingMode::nominal, ctx.integration).fidelity.value};
  });
}

SweepGrid figure_heatmap(const FigureContext& ctx) {
  const auto e = ctx.emitter({400e-12, 0.0, 30e-9, -3.0});
  const Heatmap h = sweep_heatmap_precession_coherence(e.tau_d, e.g_ratio, Axis::linear("t_lg", "ns", 2, 80, 40, 1e-9),
                                                       Axis::linear("t2_star", "ns", 5, 60, 12, 1e-9),
                                                       TimingMode::nominal, ctx.integration);
  for (std::size_t j = 0; j < h.column_optima.size(); ++j) {
    std::cerr << "t2_star_ns " << format_number(h.grid.axes[0].value(static_cast<int>(j))) << " argmax_t_lg_ns "
              << format_number(h.column_optima[j].location[0]) << '\n';
  }
  return h.grid;
}

SweepGrid figure_gratio(const FigureContext& ctx) {
  const double t2 = ctx.scenario ? ctx.scenario->params.t2_star() : 30e-9;
  PrecessionSearch search;
  search.integration = ctx.integration;
  return sweep_gratio(t2, Axis::linear("tau_d", "ps", 0, 1000, 11, 1e-12), Axis::linear("g_ratio", "", -6, 6, 13),
                      search);
}

SweepGrid figure_trace(const FigureContext& ctx) {
  return spin_trace(ctx.params({0.0, 0.0, 30e-9, 0.0}, 10e-9), 60e-9, 0.1e-9);
}

SweepGrid figure_length(const FigureContext& ctx) {
  return fidelity_vs_length(ctx.params({0.0, 0.0, 30e-9, 0.0}, 10e-9), 20, TimingMode::nominal, ctx.integration);
}

SweepGrid figure_argmax(const FigureContext& ctx) {
  const auto e = ctx.emitter({400e-12, 0.0, 30e-9, -3.0});
  const ArgmaxComparison cmp = gate_vs_cluster_argmax(e, Axis::stepped("t_lg", "ns", 10, 60, 0.2, 1e-9), {2, 3, 4},
                                                      TimingMode::nominal, ctx.integration);
  for (std::size_t k = 0; k < cmp.optima.size(); ++k) {
    std::cerr << cmp.curves.outputs[k] << " argmax_t_lg_ns " << format_number(cmp.optima[k].location[0] * 1e9)
              << " value " << format_number(cmp.optima[k].value) << '\n';
  }
  return cmp.curves;
}

SweepGrid figure_timing(const FigureContext& ctx, double tau_d, double g_ratio, double resolution) {
  TimingScanOptions o;
  o.resolution = resolution;
  o.integration = ctx.integration;
  const auto params = ctx.params({tau_d, 0.0, 30e-9, g_ratio}, 14e-9);
  const TimingScan scan = scan_pulse_timing(params, o);
  std::cerr << "first_pulse_tlg " << format_number(scan.optimum.location[0]) << '\n'
            << "second_pulse_tlg " << format_number(scan.optimum.location[1]) << '\n'
            << "cycle_tlg " << format_number(scan.cycle()) << '\n'
            << "state_fidelity " << format_number(scan.optimum.value) << '\n';
  if (!scan.optimum.warning.empty()) std::cerr << "warning: " << scan.optimum.warning << '\n';
  return scan.grid;
}

SweepGrid run_figure(const std::string& figure, const FigureContext& ctx, double resolution) {
  if (figure == "3a") return figure_lifetime(ctx);
  if (figure == "3b") return figure_coherence(ctx);
  if (figure == "3c") return figure_heatmap(ctx);
  if (figure == "3d") return figure_gratio(ctx);
  if (figure == "4a") return figure_trace(ctx);
  if (figure == "4c") return figure_length(ctx);
  if (figure == "5") return figure_argmax(ctx);
  if (figure == "6a") return figure_timing(ctx, 400e-12, -3.0, resolution);
  if (figure == "6b") return figure_timing(ctx, 200e-12, -3.0, resolution);
  if (figure == "6c") return figure_timing(ctx, 400e-12, -1.0, resolution);
  if (figure == "6d") return figure_timing(ctx, 400e-12, 3.0, resolution);
  throw InvalidParameter("unknown figure " + figure);
}

// ---------------------------------------------------------------- table

int run_table(const std::string& timing) {
  std::vector<TimingMode> modes;
  if (timing == "both" || timing == "nominal") modes.push_back(TimingMode::nominal);
  if (timing == "both" || timing == "corrected") modes.push_back(TimingMode::corrected);
  if (modes.empty()) throw InvalidParameter("--timing must be nominal, corrected or both");

  std::cout << std::left << std::setw(28) << "column" << std::setw(11) << "timing" << std::setw(10) << "quantity"
            << std::setw(11) << "computed" << std::setw(11) << "reference" << std::setw(10) << "diff"
            << "status\n";
  int index = 0;
  for (const auto& path : table1_scenarios()) {
    const Scenario sc = load_scenario(path);
    const double tol = index++ == 0 ? 0.005 : 0.02;
    for (TimingMode mode : modes) {
      const GateEvaluation gate = evaluate_gate(sc.params, mode, sc.integration);
      const std::vector<std::pair<std::string, std::pair<double, std::optional<double>>>> rows{
          {"gate", {gate.fidelity.value, sc.reference ? sc.reference->gate_fidelity : std::nullopt}},
          {"state_3", {evaluate_state(sc.params, 3, mode, sc.integration, gate.shift).value,
                       sc.reference ? sc.reference->state_fidelity_3 : std::nullopt}},
          {"state_7", {evaluate_state(sc.params, 7, mode, sc.integration, gate.shift).value,
                       sc.reference ? sc.reference->state_fidelity_7 : std::nullopt}},
      };
      const std::string label = sc.reference ? sc.reference->label : sc.name;
      for (const auto& [name, values] : rows) {
        const auto [computed, ref] = values;
        std::cout << std::setw(28) << label << std::setw(11) << to_string(mode) << std::setw(10) << name
                  << std::fixed << std::setprecision(5) << std::setw(11) << computed;
        if (ref) {
          const double diff = computed - *ref;
          std::cout << std::setw(11) << *ref << std::showpos << std::setw(10) << diff << std::noshowpos
                    << (std::abs(diff) <= tol ? "pass" : "FAIL");
        }
        std::cout << '\n';
      }
    }
  }
  return 0;
}

int run_verify(const VerifyOptions& options) {
  int failed = 0;
  auto report = [&](const std::vector<Check>& checks) {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      if (!c.passed) ++failed;
    }
  };
  report(verify_oracle(options));
  report(verify_quadrature_vs_mc(options));
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? 0 : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity of photonic linear cluster states from a precessing spin emitter"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string timing = "nominal";
  int photons = 0;

  auto* gate = app.add_subcommand("gate", "ensemble gate fidelity of one pi/2 rotation");
  gate->add_option("scenario", scenario_path, "scenario TOML file")->required();
  gate->add_option("--timing", timing, "nominal or corrected")->capture_default_str();

  auto* state = app.add_subcommand("state", "ensemble fidelity of an n-photon chain");
  state->add_option("scenario", scenario_path, "scenario TOML file")->required();
  state->add_option("--photons", photons, "chain length (default: from the scenario)");
  state->add_option("--timing", timing, "nominal or corrected")->capture_default_str();

  std::vector<double> bounds_ns{2.0, 200.0};
  double tol_ns = 0.01;
  auto* optimize = app.add_subcommand("optimize", "precession period maximizing the gate fidelity");
  optimize->add_option("scenario", scenario_path, "scenario TOML file (the field section is ignored)")->required();
  optimize->add_option("--bounds", bounds_ns, "search interval in ns")->expected(2)->delimiter(',')
      ->capture_default_str();
  optimize->add_option("--tol", tol_ns, "tolerance in ns")->capture_default_str();
  optimize->add_option("--timing", timing, "nominal or corrected")->capture_default_str();

  double grid = 0.005;
  std::string output;
  auto* scan = app.add_subcommand("scan-timing", "two-photon fidelity over first/second excitation times (CSV)");
  scan->add_option("scenario", scenario_path, "scenario TOML file")->required();
  scan->add_option("--grid", grid, "grid resolution in units of t_lg")->capture_default_str();
  scan->add_option("-o,--output", output, "CSV file (default stdout)");

  std::string figure;
  auto* sweep = app.add_subcommand("sweep", "data behind one of the study figures (CSV)");
  sweep->add_option("--figure", figure, "3a 3b 3c 3d 4a 4c 5 6a 6b 6c 6d")
      ->required()
      ->check(CLI::IsMember({"3a", "3b", "3c", "3d", "4a", "4c", "5", "6a", "6b", "6c", "6d"}));
  sweep->add_option("--scenario", scenario_path, "override the built-in device and ensemble settings");
  sweep->add_option("--grid", grid, "timing-scan resolution in units of t_lg")->capture_default_str();
  sweep->add_option("-o,--output", output, "CSV file (default stdout)");

  std::string table_timing = "both";
  auto* table = app.add_subcommand("table1", "reference devices against their published fidelities");
  table->add_option("--timing", table_timing, "nominal, corrected or both")->capture_default_str();

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "oracle and Monte Carlo cross-checks");
  verify->add_option("--mc-samples", verify_options.mc_samples, "Monte Carlo draws per check")
      ->capture_default_str();
  verify->add_option("--seed", verify_options.seed, "base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*gate) {
      const Scenario sc = load_scenario(scenario_path);
      const GateEvaluation r = evaluate_gate(sc.params, parse_timing(timing), sc.integration);
      print_result("gate_fidelity", r.fidelity);
      std::cout << "timing " << timing << "\nshift_ns " << format_number(r.shift * 1e9) << '\n';
    } else if (*state) {
      const Scenario sc = load_scenario(scenario_path);
      const int n = photons > 0 ? photons : sc.photons;
      FidelityResult r;
      if (sc.timing_offsets && photons <= 0) {
        r = ensemble_state_fidelity(sc.params, sc.schedule(), sc.integration);
        timing = "scenario";
      } else {
        r = evaluate_state(sc.params, n, parse_timing(timing), sc.integration);
      }
      print_result("state_fidelity", r);
      std::cout << "photons " << n << "\ntiming " << timing << '\n';
    } else if (*optimize) {
      const Scenario sc = load_scenario(scenario_path);
      PrecessionSearch search;
      search.lower = bounds_ns.at(0) * 1e-9;
      search.upper = bounds_ns.at(1) * 1e-9;
      search.tolerance = tol_ns * 1e-9;
      search.timing = parse_timing(timing);
      search.integration = sc.integration;
      const Optimum o = optimal_precession(sc.params.emitter(), search);
      print_optimum(o, {"t_lg_ns"}, {1e9});
      std::cout << "clock_rate_mhz " << format_number(clock_rate(o.location[0]) * 1e-6) << '\n';
    } else if (*scan) {
      const Scenario sc = load_scenario(scenario_path);
      TimingScanOptions o;
      o.resolution = grid;
      o.integration = sc.integration;
      const TimingScan result = scan_pulse_timing(sc.params, o);
      emit_csv(result.grid, output);
      std::cerr << "first_pulse_tlg " << format_number(result.optimum.location[0]) << "\nsecond_pulse_tlg "
                << format_number(result.optimum.location[1]) << "\ncycle_tlg " << format_number(result.cycle())
                << '\n';
    } else if (*sweep) {
      FigureContext ctx;
      if (!scenario_path.empty()) {
        ctx.scenario = load_scenario(scenario_path);
        ctx.integration = ctx.scenario->integration;
      }
      emit_csv(run_figure(figure, ctx, grid), output);
    } else if (*table) {
      return run_table(table_timing);
    } else if (*verify) {
      return run_verify(verify_options);
    }
  } catch (const ScenarioError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (order " << e.order() << ", last "
              << format_number(e.last()) << ", previous " << format_number(e.previous()) << ")\n";
    return kConvergenceError;
  }
  return 0;
}
