#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lcs/csv.hpp"
#include "lcs/ensemble.hpp"

namespace lcs {

/// One sweep axis. Values are in the display unit named by `unit`;
/// multiply by `si_scale` to get SI.
struct Axis {
  std::string name;
  std::string unit;
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  bool log = false;
  double si_scale = 1.0;

  static Axis linear(std::string name, std::string unit, double min, double max, int points, double si_scale = 1.0);
  static Axis logarithmic(std::string name, std::string unit, double min, double max, int points,
                          double si_scale = 1.0);
  /// Linear axis with the given step; `max` is hit when (max - min) / step is integral.
  static Axis stepped(std::string name, std::string unit, double min, double max, double step,
                      double si_scale = 1.0);

  void validate() const;
  double value(int i) const;
  double si(int i) const { return value(i) * si_scale; }
  std::vector<double> values() const;
  std::string column() const { return unit.empty() ? name : name + "_" + unit; }
};

struct FixedParameter {
  std::string name;
  double value;
};

/// Cells are stored row-major with the first axis varying slowest.
struct SweepGrid {
  std::vector<Axis> axes;
  std::vector<FixedParameter> fixed;
  std::vector<std::string> outputs;
  std::vector<std::vector<double>> cells;

  std::size_t size() const;
  std::vector<int> indices(std::size_t cell) const;
  std::vector<double> coordinates(std::size_t cell) const;
  /// Column index of a named output; throws if absent.
  int output(const std::string& name) const;
  CsvTable to_csv() const;
};

struct Optimum {
  std::vector<double> location;  // argmax, one entry per searched axis
  double value = 0.0;
  std::vector<double> resolution;  // grid spacing around the argmax, per axis
  double tolerance = 0.0;          // golden-section tolerance; 0 for grid-only argmax
  bool at_boundary = false;
  bool flat = false;
  // Grid range (first axis) whose values lie within the flatness tolerance of the maximum.
  std::pair<double, double> interval{0.0, 0.0};
  std::string warning;

  bool degenerate() const { return at_boundary || flat; }
};

/// Grid scan then golden-section refinement of a scalar function on [lower, upper].
struct LineSearch {
  double lower = 0.0;
  double upper = 1.0;
  int grid_points = 41;
  bool log = false;
  double tolerance = 1e-6;
  double flat_tolerance = 1e-9;  // absolute value spread that counts as flat
};

Optimum maximize(const std::function<double(double)>& f, const LineSearch& search,
                 std::vector<double>* grid_values = nullptr);

enum class TimingMode {
  nominal,    // pulses on the quarter-period grid
  corrected,  // every cycle stretched by the shift that maximizes the gate fidelity
};

std::string to_string(TimingMode mode);

/// Cycle stretch s (seconds) maximizing the ensemble gate fidelity of pulses at
/// 0 and t_lg/4 + s. Searched over |s| <= half_width * t_lg.
Optimum optimal_timing_shift(const DeviceParams& params, const IntegrationOptions& options = {},
                             double half_width = 0.2);

struct GateEvaluation {
  FidelityResult fidelity;
  double shift = 0.0;  // seconds; zero in nominal mode
};

GateEvaluation evaluate_gate(const DeviceParams& params, TimingMode mode, const IntegrationOptions& options = {});

/// Ensemble state fidelity of an n-photon chain. In corrected mode the gate-optimal
/// shift is applied to every cycle (computed if `shift` is empty).
FidelityResult evaluate_state(const DeviceParams& params, int photons, TimingMode mode,
                              const IntegrationOptions& options = {}, std::optional<double> shift = std::nullopt);

struct PrecessionSearch {
  double lower = 2e-9;  // s
  double upper = 200e-9;
  double tolerance = 0.01e-9;
  int grid_points = 81;  // geometric grid
  TimingMode timing = TimingMode::nominal;
  IntegrationOptions integration;
};

/// Precession period maximizing the ensemble gate fidelity for a fixed emitter.
/// Location in seconds.
Optimum optimal_precession(const DeviceParams::Emitter& emitter, const PrecessionSearch& search = {});

struct TimingScanOptions {
  double first_min = 0.15;  // units of t_lg
  double first_max = 0.45;
  double second_min = 0.35;
  double second_max = 0.80;
  double resolution = 0.005;
  int photons = 2;
  IntegrationOptions integration;
};

struct TimingScan {
  SweepGrid grid;    // axes: first and second excitation time, t_lg units
  Optimum optimum;   // location {first, second}
  double first_spacing = 0.0;   // t_lg units
  double second_spacing = 0.0;
  /// Mean spacing between consecutive optimal pulses.
  double cycle() const { return 0.5 * (first_spacing + second_spacing); }
};

/// Pulses at 0, first, second and then continuing with the last spacing
/// (times in t_lg units), as a schedule of offsets from the quarter grid.
PulseSchedule schedule_from_pulses(int photons, double first, double second, double t_lg);

TimingScan scan_pulse_timing(const DeviceParams& params, const TimingScanOptions& options = {});

struct Heatmap {
  SweepGrid grid;                     // axes: t2_star (slow), t_lg (fast)
  std::vector<Optimum> column_optima;  // grid argmax over t_lg per t2_star value
};

/// Gate fidelity over (t2_star, t_lg) for a fixed lifetime and g_ratio.
Heatmap sweep_heatmap_precession_coherence(double tau_d, double g_ratio, const Axis& t_lg, const Axis& t2_star,
                                           TimingMode mode = TimingMode::nominal,
                                           const IntegrationOptions& options = {});

/// Gate fidelity at the optimal precession period for each (tau_d, g_ratio)
/// cell; the per-cell t_lg* is reported as an output column. Cells with
/// tau_d = 0 share one inner optimization since g_ratio then drops out.
SweepGrid sweep_gratio(double t2_star, const Axis& tau_d, const Axis& g_ratio, const PrecessionSearch& search = {});

/// State fidelity for n = 1..max_photons with the chain duration (n + 2) t_lg / 4
/// and the coherence envelope at that time.
SweepGrid fidelity_vs_length(const DeviceParams& params, int max_photons, TimingMode mode = TimingMode::nominal,
                             const IntegrationOptions& options = {});

struct ArgmaxComparison {
  SweepGrid curves;               // axis t_lg; gate and state fidelities
  std::vector<int> photons;       // state curves, in output order after the gate
  std::vector<Optimum> optima;    // gate first, then one per photon count
};

/// Argmax over t_lg of the gate fidelity and of each state fidelity. Refined by
/// golden section to `tolerance` seconds around the grid argmax.
ArgmaxComparison gate_vs_cluster_argmax(const DeviceParams::Emitter& emitter, const Axis& t_lg,
                                        const std::vector<int>& photons, TimingMode mode = TimingMode::nominal,
                                        const IntegrationOptions& options = {}, double tolerance = 0.01e-9);

/// Ensemble spin projection exp(-(t/T2*)^2) cos(omega t) and its envelope.
SweepGrid spin_trace(const DeviceParams& params, double duration, double step);

struct McMean {
  double mean;
  double standard_error;
};

/// Monte Carlo average of cos(omega' t) over the frequency distribution.
McMean spin_projection_mc(const DeviceParams& params, double t, std::int64_t samples, std::uint64_t seed);

}  // namespace lcs
