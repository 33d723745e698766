#pragma once

#include <span>
#include <vector>

#include "lcs/protocol.hpp"

namespace lcs {

enum class ErrorModel { basic, dephasing, lifetime, full };

/// Per-gate rotation errors e_1..e_{n+1} (radians) of the pi/2 y-rotations
/// between consecutive emissions.
struct RotationErrors {
  std::vector<double> values;
  ErrorModel model = ErrorModel::full;

  int photons() const { return static_cast<int>(values.size()) - 1; }
};

/// Pulse-timing errors only: (e_i - e_{i-1}) * omega.
RotationErrors rotation_errors_basic(const PulseSchedule& schedule, double omega);

/// Adds a realized precession frequency omega' differing from the frequency
/// the pulses are timed for.
RotationErrors rotation_errors_dephasing(const PulseSchedule& schedule, double omega, double omega_prime);

/// Adds excited-state dwell with the excited spin precessing backwards at the
/// ground-state speed (g_ratio = -1).
RotationErrors rotation_errors_lifetime(const PulseSchedule& schedule, const ErrorSample& sample, double omega);

/// General g_ratio:
///   e_i = (pi/(2 omega) + e_i - e_{i-1} - t_{i-1}) omega' + g_ratio t_i omega' - pi/2.
RotationErrors rotation_errors_full(const PulseSchedule& schedule, const ErrorSample& sample, double omega,
                                    double g_ratio);

/// Single-shot chain fidelity for a rotation-error vector of length n + 1:
///
///   [1 + (-1)^(n+1) prod sin(e_i) + sum_{|J| even >= 2} prod_{j in J} cos(e_j)] / 2^n
///
/// The even-subset sum is evaluated with the elementary symmetric polynomial
/// recurrence in cos(e_i).
double state_fidelity_closed(std::span<const double> errors);
inline double state_fidelity_closed(const RotationErrors& errors) {
  return state_fidelity_closed(errors.values);
}

/// Fidelity of a y-rotation off by `error` radians: cos^2(error / 2).
double gate_fidelity_closed(double error);

}  // namespace lcs
