#include "lcs/protocol.hpp"

#include <cmath>
#include <string>

namespace lcs {

PulseSchedule PulseSchedule::nominal(int photons) { return uniform_cycle(photons, 0.0); }

PulseSchedule PulseSchedule::uniform_cycle(int photons, double shift) {
  if (photons < 1) throw InvalidParameter("PulseSchedule: need at least one photon");
  std::vector<double> offsets(static_cast<std::size_t>(photons) + 2);
  for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = static_cast<double>(i) * shift;
  return PulseSchedule(std::move(offsets));
}

PulseSchedule::PulseSchedule(std::vector<double> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.size() < 3) throw InvalidParameter("PulseSchedule: need n + 2 >= 3 pulses");
  if (offsets_.front() != 0.0) throw InvalidParameter("PulseSchedule: e_0 must be zero");
  for (double e : offsets_) {
    if (!std::isfinite(e)) throw InvalidParameter("PulseSchedule: offsets must be finite");
  }
}

ErrorSample ErrorSample::ideal(const DeviceParams& params, int photons) {
  return ErrorSample{params.omega(), std::vector<double>(static_cast<std::size_t>(photons) + 2, 0.0)};
}

ProtocolRun run_single(const DeviceParams& params, const PulseSchedule& schedule,
                       const ErrorSample& sample, const ProtocolOptions& options) {
  const int pulses = schedule.pulses();
  if (static_cast<int>(sample.decay_times.size()) != pulses) {
    throw InvalidParameter("run_single: need one decay time per pulse");
  }
  if (!std::isfinite(sample.omega_prime)) throw InvalidParameter("run_single: omega' must be finite");

  // Natural units: time in t_lg, so a quarter period is 1/4 and omega = 2 pi.
  const NaturalUnits units = params.units();
  const double w = sample.omega_prime * params.t_lg();
  const double g = params.g_ratio();

  PureState state(1);
  double last_decay = 0.0;
  for (int i = 0; i < pulses; ++i) {
    const double t_i = units.to_natural(sample.decay_times[static_cast<std::size_t>(i)]);
    if (!(t_i >= 0.0)) throw InvalidParameter("run_single: decay times must be non-negative");
    const double fire = units.to_natural(schedule.fire_time(i, params.t_lg()));
    if (i > 0) {
      if (fire < last_decay && !options.allow_overlap) {
        throw OverlapError("run_single: pulse " + std::to_string(i) +
                           " fires before the previous decay");
      }
      state = apply_single(state, 0, ry(w * (fire - last_decay)));
    }
    state = apply_single(state, 0, ry(g * w * t_i));
    state = emit_photon(state, 0);
    state = waveplate_z(state, state.qubits() - 1);
    last_decay = fire + t_i;
  }

  // Qubits: spin, initializing photon, n chain photons, disentangling photon.
  auto init = project(state, 1, 0);
  auto last = project(init.state, init.state.qubits() - 1, 0);
  // The disentangling photon was a copy of the spin, so the spin is now |0>.
  auto photons = project(last.state, 0, 0);
  return ProtocolRun{std::move(photons.state), std::move(last.state), init.probability,
                     last.probability};
}

double single_shot_fidelity(const DeviceParams& params, const PulseSchedule& schedule,
                            const ErrorSample& sample, const ProtocolOptions& options) {
  const ProtocolRun run = run_single(params, schedule, sample, options);
  const double f = run.herald_weight() * overlap_squared(ideal_lcs(schedule.photons()), run.photons);
  if (f > 1.0 + 1e-9) throw std::logic_error("single_shot_fidelity: value exceeds 1");
  return std::min(f, 1.0);
}

}  // namespace lcs
