#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lcs/protocol.hpp"

namespace lcs {

enum class IntegrationMethod {
  quadrature,  // Gauss-Hermite in omega', adaptive in the order
  adaptive,    // adaptive Gauss-Kronrod in omega'
  montecarlo,
};

enum class McIntegrand {
  closed_form,  // rotation errors + closed-form fidelity
  oracle,       // time-domain register simulation per sample
};

std::string to_string(IntegrationMethod method);

struct IntegrationOptions {
  IntegrationMethod method = IntegrationMethod::quadrature;
  int hermite_order = 64;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20250101;
  double rel_tolerance = 1e-6;
  std::optional<double> t_bin;  // seconds; decays outside [0, t_bin] are discarded
  McIntegrand mc_integrand = McIntegrand::closed_form;

  void validate() const;
};

struct FidelityResult {
  double value = 0.0;
  double standard_error = 0.0;  // zero for deterministic quadrature
  IntegrationMethod method = IntegrationMethod::quadrature;
  int nodes = 0;               // quadrature nodes of the returned estimate
  std::int64_t samples = 0;    // Monte Carlo draws
};

/// Gauss-Hermite refinement hit the order cap without meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last, int order)
      : std::runtime_error(what), previous_(previous), last_(last), order_(order) {}
  double previous() const { return previous_; }
  double last() const { return last_; }
  int order() const { return order_; }

 private:
  double previous_;
  double last_;
  int order_;
};

inline constexpr int kMaxHermiteOrder = 1024;

/// E[exp(i kappa t)] for t exponential with mean tau_d, optionally truncated to
/// [0, t_bin] and renormalized. Untruncated: 1 / (1 - i kappa tau_d).
std::complex<double> exp_trig_moment(double kappa, double tau_d, std::optional<double> t_bin = std::nullopt);

/// Expected single-shot chain fidelity over the dwell times at a fixed
/// realized frequency omega' (rad/s). Exact: each cos/sin factor of the
/// closed form is a sum of exp(+-i e_k), every e_k is affine in t_{k-1} and
/// t_k, and the dwell-time expectation is contracted along the chain.
double state_fidelity_given_frequency(const DeviceParams& params, const PulseSchedule& schedule,
                                      double omega_prime, std::optional<double> t_bin = std::nullopt);

/// Same for the gate fidelity cos^2(e_1 / 2) with pulses at e0 and t_lg/4 + e1.
double gate_fidelity_given_frequency(const DeviceParams& params, double e0, double e1, double omega_prime,
                                     std::optional<double> t_bin = std::nullopt);

/// Ensemble fidelity of the n-photon chain over the joint error distribution.
FidelityResult ensemble_state_fidelity(const DeviceParams& params, const PulseSchedule& schedule,
                                       const IntegrationOptions& options = {});

/// Ensemble fidelity of the pi/2 rotation between pulses at e0 and t_lg/4 + e1.
FidelityResult ensemble_gate_fidelity(const DeviceParams& params, double e0, double e1,
                                      const IntegrationOptions& options = {});

/// Monte Carlo estimate of the ensemble chain fidelity (mean and standard
/// error of i.i.d. single-shot fidelities).
FidelityResult mc_estimate(const DeviceParams& params, const PulseSchedule& schedule,
                           const IntegrationOptions& options = {});

/// Monte Carlo estimate of the ensemble gate fidelity.
FidelityResult mc_gate_estimate(const DeviceParams& params, double e0, double e1,
                                const IntegrationOptions& options = {});

}  // namespace lcs
