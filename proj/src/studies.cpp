#include "lcs/studies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "lcs/stochastics.hpp"

namespace lcs {

// ---------------------------------------------------------------- axes, grids

Axis Axis::linear(std::string name, std::string unit, double min, double max, int points, double si_scale) {
  Axis a{std::move(name), std::move(unit), min, max, points, false, si_scale};
  a.validate();
  return a;
}

Axis Axis::logarithmic(std::string name, std::string unit, double min, double max, int points, double si_scale) {
  Axis a{std::move(name), std::move(unit), min, max, points, true, si_scale};
  a.validate();
  return a;
}

Axis Axis::stepped(std::string name, std::string unit, double min, double max, double step, double si_scale) {
  if (!(step > 0.0) || !(max > min)) throw InvalidParameter("Axis::stepped: need step > 0 and max > min");
  const int points = static_cast<int>(std::lround((max - min) / step)) + 1;
  return linear(std::move(name), std::move(unit), min, min + (points - 1) * step, points, si_scale);
}

void Axis::validate() const {
  if (points < 2) throw InvalidParameter("axis " + name + ": needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
    throw InvalidParameter("axis " + name + ": need finite min < max");
  }
  if (log && !(min > 0.0)) throw InvalidParameter("axis " + name + ": log axis needs min > 0");
  if (!(si_scale > 0.0)) throw InvalidParameter("axis " + name + ": si_scale must be positive");
}

double Axis::value(int i) const {
  if (i < 0 || i >= points) throw std::out_of_range("Axis::value");
  if (i == points - 1) return max;
  const double frac = static_cast<double>(i) / (points - 1);
  return log ? min * std::pow(max / min, frac) : min + frac * (max - min);
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = value(i);
  return v;
}

std::size_t SweepGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.points);
  return n;
}

std::vector<int> SweepGrid::indices(std::size_t cell) const {
  std::vector<int> idx(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const auto p = static_cast<std::size_t>(axes[k].points);
    idx[k] = static_cast<int>(cell % p);
    cell /= p;
  }
  return idx;
}

std::vector<double> SweepGrid::coordinates(std::size_t cell) const {
  const auto idx = indices(cell);
  std::vector<double> x(axes.size());
  for (std::size_t k = 0; k < axes.size(); ++k) x[k] = axes[k].value(idx[k]);
  return x;
}

int SweepGrid::output(const std::string& name) const {
  const auto it = std::find(outputs.begin(), outputs.end(), name);
  if (it == outputs.end()) throw std::out_of_range("SweepGrid: no output " + name);
  return static_cast<int>(it - outputs.begin());
}

CsvTable SweepGrid::to_csv() const {
  CsvTable t;
  for (const auto& a : axes) t.header.push_back(a.column());
  t.header.insert(t.header.end(), outputs.begin(), outputs.end());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto row = coordinates(c);
    row.insert(row.end(), cells[c].begin(), cells[c].end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------- line search

Optimum maximize(const std::function<double(double)>& f, const LineSearch& s, std::vector<double>* grid_values) {
  if (!(s.upper > s.lower)) throw InvalidParameter("maximize: need lower < upper");
  if (s.grid_points < 3) throw InvalidParameter("maximize: need at least 3 grid points");
  if (!(s.tolerance > 0.0)) throw InvalidParameter("maximize: tolerance must be positive");
  if (s.log && !(s.lower > 0.0)) throw InvalidParameter("maximize: log grid needs lower > 0");

  const Axis axis{"x", "", s.lower, s.upper, s.grid_points, s.log, 1.0};
  const auto xs = axis.values();
  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = f(xs[i]);
  if (grid_values) *grid_values = vals;

  const std::size_t n = xs.size();
  const std::size_t k = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  Optimum opt;
  opt.value = vals[k];
  opt.location = {xs[k]};
  opt.resolution = {k + 1 < n ? xs[k + 1] - xs[k] : xs[k] - xs[k - 1]};
  opt.tolerance = s.tolerance;

  std::size_t left = k;
  std::size_t right = k;
  while (left > 0 && vals[left - 1] >= opt.value - s.flat_tolerance) --left;
  while (right + 1 < n && vals[right + 1] >= opt.value - s.flat_tolerance) ++right;
  opt.interval = {xs[left], xs[right]};
  opt.flat = right - left >= 2;

  // Golden section on the bracket around the grid argmax, in log space for log grids.
  auto to_u = [&](double x) { return s.log ? std::log(x) : x; };
  auto to_x = [&](double u) { return s.log ? std::exp(u) : u; };
  double a = to_u(xs[k > 0 ? k - 1 : 0]);
  double b = to_u(xs[std::min(k + 1, n - 1)]);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(to_x(c));
  double fd = f(to_x(d));
  double best_x = xs[k];
  double best = opt.value;
  for (int it = 0; it < 200 && to_x(b) - to_x(a) > s.tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(to_x(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(to_x(d));
    }
  }
  for (const auto& [u, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (v > best) {
      best = v;
      best_x = to_x(u);
    }
  }
  opt.value = best;
  opt.location = {best_x};

  opt.at_boundary = best_x - s.lower <= s.tolerance || s.upper - best_x <= s.tolerance;
  if (opt.at_boundary) {
    opt.warning = "optimum at the search boundary";
  } else if (opt.flat) {
    opt.warning = "flat landscape; maximum not unique within tolerance";
  }
  return opt;
}

// ---------------------------------------------------------------- timing

std::string to_string(TimingMode mode) { return mode == TimingMode::nominal ? "nominal" : "corrected"; }

Optimum optimal_timing_shift(const DeviceParams& params, const IntegrationOptions& options, double half_width) {
  if (!(half_width > 0.0 && half_width < 0.25)) throw InvalidParameter("optimal_timing_shift: half_width in (0, 0.25)");
  const double t_lg = params.t_lg();
  auto gate = [&](double frac) { return ensemble_gate_fidelity(params, 0.0, frac * t_lg, options).value; };
  Optimum o = maximize(gate, LineSearch{-half_width, half_width, 81, false, 1e-6, 1e-9});
  o.location[0] *= t_lg;
  o.resolution[0] *= t_lg;
  o.tolerance *= t_lg;
  o.interval = {o.interval.first * t_lg, o.interval.second * t_lg};
  return o;
}

GateEvaluation evaluate_gate(const DeviceParams& params, TimingMode mode, const IntegrationOptions& options) {
  if (mode == TimingMode::nominal) return {ensemble_gate_fidelity(params, 0.0, 0.0, options), 0.0};
  const double shift = optimal_timing_shift(params, options).location[0];
  return {ensemble_gate_fidelity(params, 0.0, shift, options), shift};
}

FidelityResult evaluate_state(const DeviceParams& params, int photons, TimingMode mode,
                              const IntegrationOptions& options, std::optional<double> shift) {
  if (mode == TimingMode::nominal) return ensemble_state_fidelity(params, PulseSchedule::nominal(photons), options);
  const double s = shift ? *shift : optimal_timing_shift(params, options).location[0];
  return ensemble_state_fidelity(params, PulseSchedule::uniform_cycle(photons, s), options);
}

Optimum optimal_precession(const DeviceParams::Emitter& emitter, const PrecessionSearch& search) {
  if (!(search.lower > 0.0) || !(search.upper >= 2.0 * search.lower)) {
    throw InvalidParameter("optimal_precession: bounds must be positive and span at least 2x");
  }
  auto gate = [&](double t_lg) {
    return evaluate_gate(DeviceParams::from_larmor_period(emitter, t_lg), search.timing, search.integration)
        .fidelity.value;
  };
  return maximize(gate, LineSearch{search.lower, search.upper, search.grid_points, true, search.tolerance, 1e-9});
}

PulseSchedule schedule_from_pulses(int photons, double first, double second, double t_lg) {
  if (photons < 1) throw InvalidParameter("schedule_from_pulses: photons must be >= 1");
  std::vector<double> offsets(static_cast<std::size_t>(photons) + 2);
  for (int k = 1; k < photons + 2; ++k) {
    const double fire = k == 1 ? first : second + (k - 2) * (second - first);
    offsets[static_cast<std::size_t>(k)] = (fire - 0.25 * k) * t_lg;
  }
  return PulseSchedule(std::move(offsets));
}

TimingScan scan_pulse_timing(const DeviceParams& params, const TimingScanOptions& o) {
  if (!(o.resolution > 0.0)) throw InvalidParameter("scan_pulse_timing: resolution must be positive");
  TimingScan scan;
  scan.grid.axes = {Axis::stepped("first_pulse", "tlg", o.first_min, o.first_max, o.resolution),
                    Axis::stepped("second_pulse", "tlg", o.second_min, o.second_max, o.resolution)};
  scan.grid.fixed = {{"photons", static_cast<double>(o.photons)},
                     {"t_lg_ns", params.t_lg() * 1e9},
                     {"tau_d_ps", params.tau_d() * 1e12},
                     {"t2_star_ns", params.t2_star() * 1e9},
                     {"g_ratio", params.g_ratio()}};
  scan.grid.outputs = {"state_fidelity"};
  scan.grid.cells.reserve(scan.grid.size());

  std::size_t best = 0;
  for (std::size_t c = 0; c < scan.grid.size(); ++c) {
    const auto x = scan.grid.coordinates(c);
    const auto schedule = schedule_from_pulses(o.photons, x[0], x[1], params.t_lg());
    const double f = ensemble_state_fidelity(params, schedule, o.integration).value;
    scan.grid.cells.push_back({f});
    if (f > scan.grid.cells[best][0]) best = c;
  }

  const auto idx = scan.grid.indices(best);
  const auto x = scan.grid.coordinates(best);
  Optimum& opt = scan.optimum;
  opt.location = x;
  opt.value = scan.grid.cells[best][0];
  opt.resolution = {o.resolution, o.resolution};
  opt.interval = {x[0], x[0]};
  for (std::size_t k = 0; k < 2; ++k) {
    if (idx[k] == 0 || idx[k] == scan.grid.axes[k].points - 1) opt.at_boundary = true;
  }
  if (opt.at_boundary) opt.warning = "optimum at the scan boundary";
  scan.first_spacing = x[0];
  scan.second_spacing = x[1] - x[0];
  return scan;
}

// ---------------------------------------------------------------- sweeps

Heatmap sweep_heatmap_precession_coherence(double tau_d, double g_ratio, const Axis& t_lg, const Axis& t2_star,
                                           TimingMode mode, const IntegrationOptions& options) {
  t_lg.validate();
  t2_star.validate();
  Heatmap h;
  h.grid.axes = {t2_star, t_lg};
  h.grid.fixed = {{"tau_d_ps", tau_d * 1e12}, {"g_ratio", g_ratio}};
  h.grid.outputs = {"gate_fidelity"};
  for (int j = 0; j < t2_star.points; ++j) {
    const DeviceParams::Emitter emitter{tau_d, 0.0, t2_star.si(j), g_ratio};
    int best = 0;
    std::vector<double> column;
    for (int i = 0; i < t_lg.points; ++i) {
      const auto params = DeviceParams::from_larmor_period(emitter, t_lg.si(i));
      column.push_back(evaluate_gate(params, mode, options).fidelity.value);
      h.grid.cells.push_back({column.back()});
      if (column.back() > column[static_cast<std::size_t>(best)]) best = i;
    }
    Optimum o;
    o.location = {t_lg.value(best)};
    o.value = column[static_cast<std::size_t>(best)];
    o.resolution = {best + 1 < t_lg.points ? t_lg.value(best + 1) - t_lg.value(best)
                                           : t_lg.value(best) - t_lg.value(best - 1)};
    o.interval = {o.location[0], o.location[0]};
    o.at_boundary = best == 0 || best == t_lg.points - 1;
    if (o.at_boundary) o.warning = "optimum at the search boundary";
    h.column_optima.push_back(std::move(o));
  }
  return h;
}

SweepGrid sweep_gratio(double t2_star, const Axis& tau_d, const Axis& g_ratio, const PrecessionSearch& search) {
  tau_d.validate();
  g_ratio.validate();
  SweepGrid grid;
  grid.axes = {tau_d, g_ratio};
  grid.fixed = {{"t2_star_ns", t2_star * 1e9}};
  grid.outputs = {"gate_fidelity", "t_lg_opt_ns"};
  std::map<std::pair<double, double>, Optimum> cache;
  for (int i = 0; i < tau_d.points; ++i) {
    for (int j = 0; j < g_ratio.points; ++j) {
      const double tau = tau_d.si(i);
      const double g = tau == 0.0 ? 0.0 : g_ratio.si(j);
      auto it = cache.find({tau, g});
      if (it == cache.end()) {
        it = cache.emplace(std::pair{tau, g}, optimal_precession({tau, 0.0, t2_star, g}, search)).first;
      }
      grid.cells.push_back({it->second.value, it->second.location[0] * 1e9});
    }
  }
  return grid;
}

SweepGrid fidelity_vs_length(const DeviceParams& params, int max_photons, TimingMode mode,
                             const IntegrationOptions& options) {
  if (max_photons < 2) throw InvalidParameter("fidelity_vs_length: need max_photons >= 2");
  SweepGrid grid;
  grid.axes = {Axis::linear("photons", "", 1.0, max_photons, max_photons)};
  grid.fixed = {{"t_lg_ns", params.t_lg() * 1e9},
                {"tau_d_ps", params.tau_d() * 1e12},
                {"t2_star_ns", params.t2_star() * 1e9},
                {"g_ratio", params.g_ratio()}};
  grid.outputs = {"chain_time_ns", "state_fidelity", "log_fidelity", "envelope"};
  std::optional<double> shift;
  if (mode == TimingMode::corrected) shift = optimal_timing_shift(params, options).location[0];
  for (int n = 1; n <= max_photons; ++n) {
    const double t = (n + 2) * params.t_lg() / 4.0;
    const double f = evaluate_state(params, n, mode, options, shift).value;
    const double r = t / params.t2_star();
    grid.cells.push_back({t * 1e9, f, std::log(f), std::exp(-r * r)});
  }
  return grid;
}

ArgmaxComparison gate_vs_cluster_argmax(const DeviceParams::Emitter& emitter, const Axis& t_lg,
                                        const std::vector<int>& photons, TimingMode mode,
                                        const IntegrationOptions& options, double tolerance) {
  t_lg.validate();
  ArgmaxComparison out;
  out.photons = photons;
  out.curves.axes = {t_lg};
  out.curves.fixed = {{"tau_d_ps", emitter.tau_d * 1e12},
                      {"t2_star_ns", emitter.t2_star * 1e9},
                      {"g_ratio", emitter.g_ratio}};
  out.curves.outputs = {"gate_fidelity"};
  for (int n : photons) out.curves.outputs.push_back("state_fidelity_" + std::to_string(n));
  out.curves.cells.assign(static_cast<std::size_t>(t_lg.points), {});

  const LineSearch search{t_lg.min * t_lg.si_scale, t_lg.max * t_lg.si_scale, t_lg.points, t_lg.log, tolerance,
                          1e-9};
  auto record = [&](const std::function<double(double)>& f) {
    std::vector<double> values;
    out.optima.push_back(maximize(f, search, &values));
    for (std::size_t i = 0; i < values.size(); ++i) out.curves.cells[i].push_back(values[i]);
  };
  record([&](double t) {
    return evaluate_gate(DeviceParams::from_larmor_period(emitter, t), mode, options).fidelity.value;
  });
  for (int n : photons) {
    record([&](double t) {
      return evaluate_state(DeviceParams::from_larmor_period(emitter, t), n, mode, options).value;
    });
  }
  return out;
}

SweepGrid spin_trace(const DeviceParams& params, double duration, double step) {
  if (!(step > 0.0) || !(duration > step)) throw InvalidParameter("spin_trace: need 0 < step < duration");
  SweepGrid grid;
  grid.axes = {Axis::stepped("time", "ns", 0.0, duration * 1e9, step * 1e9, 1e-9)};
  grid.fixed = {{"t_lg_ns", params.t_lg() * 1e9}, {"t2_star_ns", params.t2_star() * 1e9}};
  grid.outputs = {"s_z", "envelope"};
  for (int i = 0; i < grid.axes[0].points; ++i) {
    const double t = grid.axes[0].si(i);
    const double r = t / params.t2_star();
    const double envelope = std::exp(-r * r);
    grid.cells.push_back({envelope * std::cos(params.omega() * t), envelope});
  }
  return grid;
}

McMean spin_projection_mc(const DeviceParams& params, double t, std::int64_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidParameter("spin_projection_mc: need at least 2 samples");
  const double sigma = std::isinf(params.t2_star()) ? 0.0 : params.sigma_c();
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
    const double x = std::cos((params.omega() + sigma * rng.normal()) * t);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  return {mean, std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples))};
}

}  // namespace lcs
