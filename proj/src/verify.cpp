#include "lcs/verify.hpp"

#include <cmath>
#include <sstream>

#include "lcs/closedform.hpp"
#include "lcs/ensemble.hpp"
#include "lcs/scenario.hpp"
#include "lcs/stochastics.hpp"

namespace lcs {
namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Check compare_mc(const std::string& name, double quad, const FidelityResult& mc) {
  const double diff = std::abs(quad - mc.value);
  const double limit = mc.standard_error > 0.0 ? 3.0 * mc.standard_error : 1e-12;
  return {name, diff <= limit,
          "quadrature " + fmt(quad) + ", mc " + fmt(mc.value) + " +- " + fmt(mc.standard_error) + ", |diff| / se = " +
              fmt(mc.standard_error > 0.0 ? diff / mc.standard_error : 0.0)};
}

}  // namespace

std::vector<Check> verify_oracle(const VerifyOptions& options) {
  std::vector<Check> out;
  const double t_lg = 10e-9;
  const ProtocolOptions overlap{.allow_overlap = true};
  for (int n = 1; n <= 4; ++n) {
    SplitMix64 rng(stream_seed(options.seed, static_cast<std::uint64_t>(n)));
    double worst = 0.0;
    for (int draw = 0; draw < options.oracle_draws; ++draw) {
      const double tau = 0.05 * t_lg * rng.uniform();
      const double g = -6.0 + 12.0 * rng.uniform();
      const auto params = DeviceParams::from_larmor_period({tau, 0.0, 30e-9, g}, t_lg);

      std::vector<double> offsets(static_cast<std::size_t>(n) + 2, 0.0);
      for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] = (rng.uniform() - 0.5) * 0.1 * t_lg;
      const PulseSchedule schedule(offsets);

      ErrorSample s;
      s.omega_prime = params.omega() * (1.0 + 0.1 * rng.normal());
      for (int i = 0; i < n + 2; ++i) s.decay_times.push_back(-tau * std::log(rng.uniform()));

      const double closed = state_fidelity_closed(rotation_errors_full(schedule, s, params.omega(), g));
      double oracle = 0.0;
      try {
        oracle = single_shot_fidelity(params, schedule, s, overlap);
      } catch (const ImpossibleOutcome&) {
        oracle = 0.0;
      }
      worst = std::max(worst, std::abs(oracle - closed));
    }
    out.push_back({"oracle vs closed form, n = " + std::to_string(n), worst <= 1e-10,
                   std::to_string(options.oracle_draws) + " draws, max |diff| = " + fmt(worst)});
  }
  return out;
}

std::vector<Check> verify_quadrature_vs_mc(const VerifyOptions& options) {
  std::vector<Check> out;
  IntegrationOptions quad;
  IntegrationOptions mc;
  mc.method = IntegrationMethod::montecarlo;
  mc.mc_samples = options.mc_samples;
  mc.seed = options.seed;

  for (const auto& path : table1_scenarios()) {
    const Scenario sc = load_scenario(path);
    out.push_back(compare_mc(sc.name + " gate", ensemble_gate_fidelity(sc.params, 0.0, 0.0, quad).value,
                             mc_gate_estimate(sc.params, 0.0, 0.0, mc)));
    for (int n : {3, 7}) {
      const auto schedule = PulseSchedule::nominal(n);
      out.push_back(compare_mc(sc.name + " state n = " + std::to_string(n),
                               ensemble_state_fidelity(sc.params, schedule, quad).value,
                               mc_estimate(sc.params, schedule, mc)));
    }
  }

  SplitMix64 rng(stream_seed(options.seed, 0xabcdefULL));
  const double t_lg = 10e-9;
  for (int k = 0; k < options.random_sets; ++k) {
    const double tau = 0.08 * t_lg * rng.uniform();
    const double t2 = t_lg * 0.5 * std::pow(40.0, rng.uniform());
    const double g = -6.0 + 12.0 * rng.uniform();
    const int n = 1 + static_cast<int>(5.0 * rng.uniform());
    const double shift = (rng.uniform() - 0.5) * 0.1 * t_lg;
    const auto params = DeviceParams::from_larmor_period({tau, 0.0, t2, g}, t_lg);
    const auto schedule = PulseSchedule::uniform_cycle(n, shift);
    mc.seed = stream_seed(options.seed, static_cast<std::uint64_t>(1000 + k));
    out.push_back(compare_mc("random set " + std::to_string(k) + " (n = " + std::to_string(n) + ")",
                             ensemble_state_fidelity(params, schedule, quad).value,
                             mc_estimate(params, schedule, mc)));
  }
  return out;
}

}  // namespace lcs
