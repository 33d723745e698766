#include "lcs/closedform.hpp"

#include <cmath>
#include <numbers>

namespace lcs {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidParameter("omega must be positive");
}

void check_sample(const PulseSchedule& schedule, const ErrorSample& sample) {
  if (static_cast<int>(sample.decay_times.size()) != schedule.pulses()) {
    throw InvalidParameter("rotation errors: need one decay time per pulse");
  }
}

}  // namespace

RotationErrors rotation_errors_basic(const PulseSchedule& schedule, double omega) {
  check_omega(omega);
  RotationErrors out{{}, ErrorModel::basic};
  for (int i = 1; i < schedule.pulses(); ++i) {
    out.values.push_back((schedule.offset(i) - schedule.offset(i - 1)) * omega);
  }
  return out;
}

RotationErrors rotation_errors_dephasing(const PulseSchedule& schedule, double omega, double omega_prime) {
  check_omega(omega);
  RotationErrors out{{}, ErrorModel::dephasing};
  for (int i = 1; i < schedule.pulses(); ++i) {
    const double ground = kHalfPi / omega + schedule.offset(i) - schedule.offset(i - 1);
    out.values.push_back(ground * omega_prime - kHalfPi);
  }
  return out;
}

RotationErrors rotation_errors_lifetime(const PulseSchedule& schedule, const ErrorSample& sample, double omega) {
  check_omega(omega);
  check_sample(schedule, sample);
  const double wp = sample.omega_prime;
  RotationErrors out{{}, ErrorModel::lifetime};
  for (int i = 1; i < schedule.pulses(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ground = kHalfPi / omega + schedule.offset(i) - schedule.offset(i - 1) - sample.decay_times[k - 1];
    out.values.push_back(ground * wp - sample.decay_times[k] * wp - kHalfPi);
  }
  return out;
}

RotationErrors rotation_errors_full(const PulseSchedule& schedule, const ErrorSample& sample, double omega,
                                    double g_ratio) {
  check_omega(omega);
  check_sample(schedule, sample);
  const double wp = sample.omega_prime;
  RotationErrors out{{}, ErrorModel::full};
  for (int i = 1; i < schedule.pulses(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ground = kHalfPi / omega + schedule.offset(i) - schedule.offset(i - 1) - sample.decay_times[k - 1];
    out.values.push_back(ground * wp + g_ratio * sample.decay_times[k] * wp - kHalfPi);
  }
  return out;
}

double state_fidelity_closed(std::span<const double> errors) {
  if (errors.size() < 2) throw InvalidParameter("state_fidelity_closed: need n + 1 >= 2 rotation errors");
  const std::size_t m = errors.size();
  const int photons = static_cast<int>(m) - 1;

  // esf[k] = k-th elementary symmetric polynomial of cos(e_1..e_m).
  std::vector<double> esf(m + 1, 0.0);
  esf[0] = 1.0;
  double sin_product = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(errors[i])) throw InvalidParameter("state_fidelity_closed: non-finite error");
    const double c = std::cos(errors[i]);
    sin_product *= std::sin(errors[i]);
    for (std::size_t k = i + 1; k >= 1; --k) esf[k] += c * esf[k - 1];
  }
  double even_sum = 0.0;
  for (std::size_t k = 2; k <= m; k += 2) even_sum += esf[k];

  const double sign = (photons + 1) % 2 == 0 ? 1.0 : -1.0;
  const double f = std::ldexp(1.0 + sign * sin_product + even_sum, -photons);
  if (f < 0.0 && f > -1e-12) return 0.0;
  if (f > 1.0 && f < 1.0 + 1e-12) return 1.0;
  return f;
}

double gate_fidelity_closed(double error) {
  const double c = std::cos(error / 2.0);
  return c * c;
}

}  // namespace lcs
