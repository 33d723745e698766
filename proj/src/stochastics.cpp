#include "lcs/stochastics.hpp"

#include <cmath>
#include <numbers>

namespace lcs {

ErrorDistribution ErrorDistribution::from(const DeviceParams& params, int photons, std::optional<double> t_bin) {
  ErrorDistribution d;
  d.omega_mean = params.omega();
  d.sigma_c = std::isinf(params.t2_star()) ? 0.0 : params.sigma_c();
  d.tau_d = params.tau_d();
  d.tau_r = params.tau_r();
  d.photons = photons;
  d.t_bin = t_bin;
  d.validate();
  return d;
}

void ErrorDistribution::validate() const {
  if (!(sigma_c >= 0.0) || !std::isfinite(sigma_c)) throw InvalidParameter("sigma_c must be >= 0");
  if (!(tau_d >= 0.0) || !std::isfinite(tau_d)) throw InvalidParameter("tau_d must be >= 0");
  if (!(tau_r >= 0.0)) throw InvalidParameter("tau_r must be >= 0");
  if (photons < 1) throw InvalidParameter("need at least one photon");
  if (t_bin && !(*t_bin > 0.0)) throw InvalidParameter("t_bin must be positive");
}

double ErrorDistribution::window_mass() const {
  if (!t_bin || tau_d == 0.0) return 1.0;
  return -std::expm1(-*t_bin / tau_d);
}

double pdf_frequency(double omega_prime, const ErrorDistribution& dist) {
  if (!(dist.sigma_c > 0.0)) throw InvalidParameter("pdf_frequency: sigma_c must be positive");
  const double z = (omega_prime - dist.omega_mean) / dist.sigma_c;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * dist.sigma_c);
}

double population(double t, double tau_r, double tau_d) {
  if (!(tau_d > 0.0)) throw InvalidParameter("population: tau_d must be positive");
  if (!(tau_r >= 0.0)) throw InvalidParameter("population: tau_r must be >= 0");
  double rise;
  if (tau_r == 0.0) {
    rise = t >= 0.0 ? 1.0 : 0.0;
  } else {
    rise = 0.5 * (1.0 + std::erf(t / (std::numbers::sqrt2 * tau_r)));
  }
  if (rise == 0.0) return 0.0;
  return rise * std::exp(-t / tau_d);
}

double pdf_decay_time(double t, const ErrorDistribution& dist) {
  if (!(dist.tau_d > 0.0)) throw InvalidParameter("pdf_decay_time: tau_d must be positive");
  if (t < 0.0) return 0.0;
  if (dist.t_bin && t > *dist.t_bin) return 0.0;
  return std::exp(-t / dist.tau_d) / (dist.tau_d * dist.window_mass());
}

double cdf_decay_time(double t, const ErrorDistribution& dist) {
  if (!(dist.tau_d > 0.0)) throw InvalidParameter("cdf_decay_time: tau_d must be positive");
  if (t <= 0.0) return 0.0;
  if (dist.t_bin && t >= *dist.t_bin) return 1.0;
  return -std::expm1(-t / dist.tau_d) / dist.window_mass();
}

double pdf_decay_times(const ErrorSample& sample, const ErrorDistribution& dist) {
  if (static_cast<int>(sample.decay_times.size()) != dist.pulses()) {
    throw InvalidParameter("pdf_decay_times: need one decay time per pulse");
  }
  double p = 1.0;
  for (double t : sample.decay_times) p *= pdf_decay_time(t, dist);
  return p;
}

double pdf_joint(const ErrorSample& sample, const ErrorDistribution& dist) {
  return pdf_frequency(sample.omega_prime, dist) * pdf_decay_times(sample, dist);
}

double SplitMix64::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL));
  mix();
  return mix();
}

ErrorSample sample(const ErrorDistribution& dist, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ErrorSample s;
  s.omega_prime = dist.omega_mean + dist.sigma_c * rng.normal();
  s.decay_times.resize(static_cast<std::size_t>(dist.pulses()));
  const double mass = dist.window_mass();
  for (double& t : s.decay_times) {
    // Inverse CDF of the (truncated) exponential.
    const double u = rng.uniform();
    t = dist.tau_d == 0.0 ? 0.0 : -dist.tau_d * std::log1p(-u * mass);
  }
  return s;
}

}  // namespace lcs
