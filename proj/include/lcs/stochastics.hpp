#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "lcs/protocol.hpp"

namespace lcs {

/// Distribution of the per-run errors: a quasi-static Gaussian precession
/// frequency and independent exponential dwell times for each of the n + 2
/// excitations, optionally post-selected to decays inside [0, t_bin].
struct ErrorDistribution {
  double omega_mean = 0.0;  // rad/s
  double sigma_c = 0.0;     // rad/s; 0 means no dephasing
  double tau_d = 0.0;       // s; 0 means instantaneous decay
  double tau_r = 0.0;       // s; only used by population()
  int photons = 1;
  std::optional<double> t_bin;  // s

  static ErrorDistribution from(const DeviceParams& params, int photons,
                                std::optional<double> t_bin = std::nullopt);
  void validate() const;
  int pulses() const { return photons + 2; }
  /// Probability that one exponential dwell falls inside the window (1 without a window).
  double window_mass() const;
};

/// Gaussian density N(omega_mean, sigma_c^2) at omega'.
double pdf_frequency(double omega_prime, const ErrorDistribution& dist);

/// Excited-state population after excitation at t = 0:
/// (1 + erf(t / (sqrt(2) tau_r))) / 2 * exp(-t / tau_d). tau_r == 0 turns the
/// rise into a unit step (value 1 at t = 0).
double population(double t, double tau_r, double tau_d);

/// Density of one dwell time: exp(-t/tau_d)/tau_d on t >= 0, truncated to the
/// window and renormalized when t_bin is set.
double pdf_decay_time(double t, const ErrorDistribution& dist);

/// Cumulative distribution of one dwell time (matching pdf_decay_time).
double cdf_decay_time(double t, const ErrorDistribution& dist);

/// Joint density of all dwell times of a sample (product of pdf_decay_time).
double pdf_decay_times(const ErrorSample& sample, const ErrorDistribution& dist);

/// pdf_frequency * pdf_decay_times.
double pdf_joint(const ErrorSample& sample, const ErrorDistribution& dist);

/// SplitMix64 (Steele, Lea & Flood 2014). A 64-bit counter passed through a
/// bijective mixer; satisfies UniformRandomBitGenerator. Streams for
/// different seeds are independent for practical purposes, so per-sample
/// seeds give order-independent Monte Carlo.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }
  /// Standard normal via Box-Muller (one of the pair).
  double normal();

 private:
  std::uint64_t state_;
};

/// Derives the seed of the index-th sample of a stream.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Draws one error realization; deterministic for a given seed.
ErrorSample sample(const ErrorDistribution& dist, std::uint64_t seed);

}  // namespace lcs
