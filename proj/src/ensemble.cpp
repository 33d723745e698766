#include "lcs/ensemble.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lcs/closedform.hpp"
#include "lcs/quadrature.hpp"
#include "lcs/stochastics.hpp"

namespace lcs {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Coefficients of exp(i k e), k = -1, 0, +1, in the three chain products
// whose combination is the closed-form fidelity:
//   F = prod cos^2(e/2) + prod sin^2(e/2) + 2 (-1)^(n+1) prod sin(e)/2.
constexpr std::array<cplx, 3> kCosSquared{cplx(0.25), cplx(0.5), cplx(0.25)};
constexpr std::array<cplx, 3> kSinSquared{cplx(-0.25), cplx(0.5), cplx(-0.25)};
constexpr std::array<cplx, 3> kHalfSin{cplx(0.0, 0.25), cplx(0.0), cplx(0.0, -0.25)};

// 1 - exp(z) without cancellation for small |z|.
cplx one_minus_exp(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  const cplx em1(std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b));
  return -em1;
}

struct NaturalChain {
  int photons;
  double g_ratio;
  double tau;                  // dwell-time mean in t_lg units
  std::optional<double> bin;   // window in t_lg units
  std::vector<double> gaps;    // (e_i - e_{i-1}) / t_lg, i = 1..n+1
};

NaturalChain natural_chain(const DeviceParams& params, const PulseSchedule& schedule,
                           std::optional<double> t_bin) {
  const NaturalUnits u = params.units();
  NaturalChain c{schedule.photons(), params.g_ratio(), u.to_natural(params.tau_d()), std::nullopt, {}};
  if (t_bin) {
    if (!(*t_bin > 0.0)) throw InvalidParameter("t_bin must be positive");
    c.bin = u.to_natural(*t_bin);
  }
  for (int i = 1; i < schedule.pulses(); ++i) {
    c.gaps.push_back(u.to_natural(schedule.offset(i) - schedule.offset(i - 1)));
  }
  return c;
}

// Expected fidelity over dwell times at natural frequency w (rad per t_lg).
double chain_expectation(const NaturalChain& c, double w) {
  // moments[a][b] = E[exp(i w (g a - b) t)], a, b in {-1, 0, 1} stored as 0..2.
  std::array<std::array<cplx, 3>, 3> moments;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      moments[a][b] = exp_trig_moment(w * (c.g_ratio * (a - 1) - (b - 1)), c.tau, c.bin);
    }
  }

  std::vector<std::array<cplx, 3>> phases(c.gaps.size());
  for (std::size_t i = 0; i < c.gaps.size(); ++i) {
    const double d = (0.25 + c.gaps[i]) * w - 0.5 * kPi;
    phases[i] = {std::polar(1.0, -d), cplx(1.0), std::polar(1.0, d)};
  }

  auto contract = [&](const std::array<cplx, 3>& coef) {
    std::array<cplx, 3> v{cplx(0.0), cplx(1.0), cplx(0.0)};  // t_0 has no excited-state term
    for (const auto& phase : phases) {
      std::array<cplx, 3> next{};
      for (int b = 0; b < 3; ++b) {
        if (coef[b] == cplx(0.0)) continue;
        cplx acc = 0.0;
        for (int a = 0; a < 3; ++a) acc += v[a] * moments[a][b];
        next[b] = coef[b] * phase[b] * acc;
      }
      v = next;
    }
    // t_{n+1} only precesses in the excited state.
    return v[0] * moments[0][1] + v[1] * moments[1][1] + v[2] * moments[2][1];
  };

  const double sign = (c.photons + 1) % 2 == 0 ? 1.0 : -1.0;
  const cplx total = contract(kCosSquared) + contract(kSinSquared) + 2.0 * sign * contract(kHalfSin);
  return total.real();
}

double gate_expectation(double g_ratio, double tau, std::optional<double> bin, double gap, double w) {
  const double d = (0.25 + gap) * w - 0.5 * kPi;
  const cplx mean_phase = std::polar(1.0, d) * exp_trig_moment(-w, tau, bin) * exp_trig_moment(g_ratio * w, tau, bin);
  return 0.5 + 0.5 * mean_phase.real();
}

double finalize(double value) {
  if (!(value >= -1e-9) || !(value <= 1.0 + 1e-9)) {
    throw std::logic_error("ensemble fidelity outside [0, 1]: " + std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

// Integrates f(w) over w ~ N(w_mean, sigma^2) in natural units.
template <typename F>
FidelityResult integrate_frequency(F&& f, double w_mean, double sigma, const IntegrationOptions& options) {
  FidelityResult result;
  result.method = options.method;
  if (sigma == 0.0) {
    result.value = finalize(f(w_mean));
    result.nodes = 1;
    return result;
  }
  auto at = [&](double x) { return f(w_mean + sigma * x); };

  if (options.method == IntegrationMethod::quadrature) {
    int order = options.hermite_order;
    double value = gauss_hermite(order).expectation(at);
    double previous = value;
    while (true) {
      const int next_order = 2 * order;
      if (next_order > kMaxHermiteOrder) {
        if (options.t_bin) break;  // fall through to the adaptive rule
        throw ConvergenceError("Gauss-Hermite quadrature did not converge", previous, value, order);
      }
      const double next = gauss_hermite(next_order).expectation(at);
      const double scale = std::max(std::abs(next), 1e-3);
      if (std::abs(next - value) <= options.rel_tolerance * scale) {
        result.value = finalize(next);
        result.nodes = next_order;
        return result;
      }
      previous = value;
      value = next;
      order = next_order;
    }
  }
  result.method = IntegrationMethod::adaptive;
  result.value = finalize(gaussian_expectation_adaptive(at, options.rel_tolerance));
  return result;
}

struct Welford {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

}  // namespace

std::string to_string(IntegrationMethod method) {
  switch (method) {
    case IntegrationMethod::quadrature: return "quadrature";
    case IntegrationMethod::adaptive: return "adaptive";
    case IntegrationMethod::montecarlo: return "montecarlo";
  }
  return "unknown";
}

void IntegrationOptions::validate() const {
  if (hermite_order < 8) throw InvalidParameter("hermite_order must be >= 8");
  if (hermite_order > kMaxHermiteOrder) throw InvalidParameter("hermite_order above cap");
  if (mc_samples < 1000) throw InvalidParameter("mc_samples must be >= 1000");
  if (!(rel_tolerance > 0.0)) throw InvalidParameter("rel_tolerance must be positive");
  if (t_bin && !(*t_bin > 0.0)) throw InvalidParameter("t_bin must be positive");
}

std::complex<double> exp_trig_moment(double kappa, double tau_d, std::optional<double> t_bin) {
  if (!(tau_d >= 0.0)) throw InvalidParameter("exp_trig_moment: tau_d must be >= 0");
  if (tau_d == 0.0) return 1.0;
  const cplx base(1.0, -kappa * tau_d);
  if (!t_bin) return 1.0 / base;
  if (!(*t_bin > 0.0)) throw InvalidParameter("exp_trig_moment: t_bin must be positive");
  const double mass = -std::expm1(-*t_bin / tau_d);
  const cplx z(-*t_bin / tau_d, kappa * *t_bin);
  return one_minus_exp(z) / (base * mass);
}

double state_fidelity_given_frequency(const DeviceParams& params, const PulseSchedule& schedule,
                                      double omega_prime, std::optional<double> t_bin) {
  return chain_expectation(natural_chain(params, schedule, t_bin), omega_prime * params.t_lg());
}

double gate_fidelity_given_frequency(const DeviceParams& params, double e0, double e1, double omega_prime,
                                     std::optional<double> t_bin) {
  const NaturalUnits u = params.units();
  std::optional<double> bin;
  if (t_bin) bin = u.to_natural(*t_bin);
  return gate_expectation(params.g_ratio(), u.to_natural(params.tau_d()), bin, u.to_natural(e1 - e0),
                          omega_prime * params.t_lg());
}

FidelityResult ensemble_state_fidelity(const DeviceParams& params, const PulseSchedule& schedule,
                                       const IntegrationOptions& options) {
  options.validate();
  if (options.method == IntegrationMethod::montecarlo) return mc_estimate(params, schedule, options);
  const NaturalChain chain = natural_chain(params, schedule, options.t_bin);
  const double sigma = std::isinf(params.t2_star()) ? 0.0 : params.sigma_c() * params.t_lg();
  return integrate_frequency([&](double w) { return chain_expectation(chain, w); }, 2.0 * kPi, sigma, options);
}

FidelityResult ensemble_gate_fidelity(const DeviceParams& params, double e0, double e1,
                                      const IntegrationOptions& options) {
  options.validate();
  if (options.method == IntegrationMethod::montecarlo) return mc_gate_estimate(params, e0, e1, options);
  const NaturalUnits u = params.units();
  std::optional<double> bin;
  if (options.t_bin) bin = u.to_natural(*options.t_bin);
  const double tau = u.to_natural(params.tau_d());
  const double gap = u.to_natural(e1 - e0);
  const double sigma = std::isinf(params.t2_star()) ? 0.0 : params.sigma_c() * params.t_lg();
  return integrate_frequency([&](double w) { return gate_expectation(params.g_ratio(), tau, bin, gap, w); },
                             2.0 * kPi, sigma, options);
}

FidelityResult mc_estimate(const DeviceParams& params, const PulseSchedule& schedule,
                           const IntegrationOptions& options) {
  options.validate();
  const ErrorDistribution dist = ErrorDistribution::from(params, schedule.photons(), options.t_bin);
  const ProtocolOptions oracle_options{.allow_overlap = true};
  Welford acc;
  for (std::int64_t i = 0; i < options.mc_samples; ++i) {
    const ErrorSample s = sample(dist, stream_seed(options.seed, static_cast<std::uint64_t>(i)));
    double f;
    if (options.mc_integrand == McIntegrand::closed_form) {
      f = state_fidelity_closed(rotation_errors_full(schedule, s, params.omega(), params.g_ratio()));
    } else {
      try {
        f = single_shot_fidelity(params, schedule, s, oracle_options);
      } catch (const ImpossibleOutcome&) {
        f = 0.0;  // the heralding weight vanishes with the projection probability
      }
    }
    acc.add(f);
  }
  return FidelityResult{finalize(acc.mean), acc.standard_error(), IntegrationMethod::montecarlo, 0, acc.count};
}

FidelityResult mc_gate_estimate(const DeviceParams& params, double e0, double e1, const IntegrationOptions& options) {
  options.validate();
  const ErrorDistribution dist = ErrorDistribution::from(params, 1, options.t_bin);
  const PulseSchedule schedule({0.0, e1 - e0, 0.0});
  Welford acc;
  for (std::int64_t i = 0; i < options.mc_samples; ++i) {
    const ErrorSample s = sample(dist, stream_seed(options.seed, static_cast<std::uint64_t>(i)));
    acc.add(gate_fidelity_closed(rotation_errors_full(schedule, s, params.omega(), params.g_ratio()).values[0]));
  }
  return FidelityResult{finalize(acc.mean), acc.standard_error(), IntegrationMethod::montecarlo, 0, acc.count};
}

}  // namespace lcs
