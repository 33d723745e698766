#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lcs/densmat.hpp"
#include "lcs/model.hpp"

namespace lcs {

/// A pulse fires while the emitter is still excited.
class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Excitation-time deviations e_0..e_{n+1} (seconds) for an n-photon chain.
/// Pulse i nominally fires at i * t_lg / 4 + e_i; e_0 is the time reference
/// and is always zero.
class PulseSchedule {
 public:
  /// All pulses on the quarter-period grid.
  static PulseSchedule nominal(int photons);
  /// Every cycle stretched by `shift` seconds: e_i = i * shift.
  static PulseSchedule uniform_cycle(int photons, double shift);

  explicit PulseSchedule(std::vector<double> offsets);

  int photons() const { return static_cast<int>(offsets_.size()) - 2; }
  int pulses() const { return static_cast<int>(offsets_.size()); }
  std::span<const double> offsets() const { return offsets_; }
  double offset(int i) const { return offsets_.at(static_cast<std::size_t>(i)); }
  double fire_time(int i, double t_lg) const { return i * t_lg / 4.0 + offset(i); }

 private:
  std::vector<double> offsets_;
};

/// One realization of the stochastic errors: the precession frequency of this
/// run (rad/s) and the excited-state dwell time of each of the n + 2 pulses (s).
struct ErrorSample {
  double omega_prime = 0.0;
  std::vector<double> decay_times;

  /// Error-free realization for `photons`: omega' = omega, instantaneous decay.
  static ErrorSample ideal(const DeviceParams& params, int photons);
};

struct ProtocolOptions {
  /// Accept dwell times that run past the next pulse by continuing the
  /// precession formula (negative ground-state time). Used where the run is
  /// compared against the closed form over the full exponential measure.
  bool allow_overlap = false;
};

struct ProtocolRun {
  PureState photons;           // the n chain photons
  PureState register_state;    // spin (qubit 0) + the n chain photons
  double init_probability;     // outcome 0 on the initializing photon
  double final_probability;    // outcome 0 on the disentangling photon
  /// Heralding weight of the disentangling projection relative to the ideal
  /// run, final_probability / (1/2). The single-shot fidelity is
  /// weight * |<lcs|photons>|^2.
  double herald_weight() const { return 2.0 * final_probability; }
  double joint_probability() const { return init_probability * final_probability; }
};

/// Simulates one protocol run in the time domain on the explicit spin-photon
/// register.
///
/// For each pulse i = 0..n+1: the ground-state spin precesses for the time
/// since the previous decay, the pulse excites, the excited pseudo-spin
/// precesses by g_ratio * omega' * t_i, the decay copies the spin onto a new
/// photon and a half-wave plate applies Z to that photon. Afterwards the first
/// photon is projected onto |0> (renormalized, re-initializing the spin) and
/// the last photon is projected onto |0> (disentangling the spin).
ProtocolRun run_single(const DeviceParams& params, const PulseSchedule& schedule,
                       const ErrorSample& sample, const ProtocolOptions& options = {});

/// Fidelity of one run with the ideal chain: the heralded overlap weighted by
/// the disentangling-projection probability relative to its ideal value.
double single_shot_fidelity(const DeviceParams& params, const PulseSchedule& schedule,
                            const ErrorSample& sample, const ProtocolOptions& options = {});

}  // namespace lcs
