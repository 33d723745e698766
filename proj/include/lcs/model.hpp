#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace lcs {

/// Thrown for physically meaningless or out-of-range inputs.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace codata {
// CODATA 2018 recommended values.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J / T
}  // namespace codata

/// Ground-state Larmor period 2*pi*hbar / (g * mu_B * B) in seconds.
double larmor_period(double g_ground, double field_tesla);

/// Protocol cycle rate r_c = 4 / t_lg in hertz (one emission per quarter period).
double clock_rate(double t_lg);

/// Rate at which whole n-photon chains are produced: 4 / ((n + 2) t_lg).
double lcs_rate(int photons, double t_lg);

/// Time expressed in multiples of the ground-state Larmor period.
struct NaturalUnits {
  double scale = 1.0;  // seconds per unit

  double to_natural(double seconds) const { return seconds / scale; }
  double to_si(double natural) const { return natural * scale; }
};

/// Physical description of the emitter. Immutable after construction; use the
/// named constructors to pick which quantity fixes the precession period.
///
/// g_ratio = g_excited / g_ground is the canonical excited-state quantity; the
/// individual g-factors are kept only when the caller supplied them.
class DeviceParams {
 public:
  struct Emitter {
    double tau_d = 0.0;    // excited-state lifetime, s
    double tau_r = 0.0;    // population rise constant, s
    double t2_star = 0.0;  // inhomogeneous dephasing time, s
    double g_ratio = 0.0;  // g_excited / g_ground
  };

  static DeviceParams from_larmor_period(const Emitter& emitter, double t_lg);
  static DeviceParams from_clock_rate(const Emitter& emitter, double rate_hz);
  /// Fixes t_lg from the ground-state g-factor and the applied field. g_excited,
  /// when given, overrides emitter.g_ratio.
  static DeviceParams from_field(const Emitter& emitter, double g_ground, double field_tesla,
                                 std::optional<double> g_excited = std::nullopt);

  double tau_d() const { return emitter_.tau_d; }
  double tau_r() const { return emitter_.tau_r; }
  double t2_star() const { return emitter_.t2_star; }
  double g_ratio() const { return emitter_.g_ratio; }
  double t_lg() const { return t_lg_; }
  /// Mean angular precession frequency 2*pi / t_lg in rad/s.
  double omega() const { return 2.0 * std::numbers::pi / t_lg_; }
  double clock_rate() const { return lcs::clock_rate(t_lg_); }
  /// Width of the Gaussian spread of the realized precession frequency, sqrt(2)/T2*.
  double sigma_c() const { return std::numbers::sqrt2 / emitter_.t2_star; }

  std::optional<double> field_b() const { return field_b_; }
  std::optional<double> g_ground() const { return g_ground_; }
  std::optional<double> g_excited() const { return g_excited_; }

  const Emitter& emitter() const { return emitter_; }
  NaturalUnits units() const { return NaturalUnits{t_lg_}; }

  /// Same emitter at a different precession period (the field is dropped).
  DeviceParams with_larmor_period(double t_lg) const;
  DeviceParams with_emitter(const Emitter& emitter) const;

 private:
  DeviceParams(const Emitter& emitter, double t_lg);
  static void validate(const Emitter& emitter);

  Emitter emitter_;
  double t_lg_ = 1.0;
  std::optional<double> field_b_;
  std::optional<double> g_ground_;
  std::optional<double> g_excited_;
};

std::string describe(const DeviceParams& params);

}  // namespace lcs
