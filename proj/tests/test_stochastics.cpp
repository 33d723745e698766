#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <numbers>
#include <vector>

#include "lcs/stochastics.hpp"

using namespace lcs;
using boost::math::quadrature::gauss_kronrod;

namespace {

ErrorDistribution reference(std::optional<double> t_bin = std::nullopt) {
  const auto p = DeviceParams::from_larmor_period({0.4e-9, 0.0, 30e-9, -3.0}, 14e-9);
  return ErrorDistribution::from(p, 2, t_bin);
}

template <typename Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

// Asymptotic Kolmogorov critical value at alpha = 0.001.
double ks_critical(std::size_t n) { return 1.9495 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_CASE("frequency density") {
  const auto d = reference();
  CHECK(pdf_frequency(d.omega_mean, d) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi * d.sigma_c * d.sigma_c)));
  CHECK(pdf_frequency(d.omega_mean + 0.3 * d.sigma_c, d) == doctest::Approx(pdf_frequency(d.omega_mean - 0.3 * d.sigma_c, d)));
  const double mass = gauss_kronrod<double, 31>::integrate([&](double w) { return pdf_frequency(w, d); },
                                                            d.omega_mean - 12 * d.sigma_c,
                                                            d.omega_mean + 12 * d.sigma_c, 15, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  const auto no_dephasing = ErrorDistribution::from(
      DeviceParams::from_larmor_period({0.4e-9, 0.0, std::numeric_limits<double>::infinity(), -3.0}, 14e-9), 2);
  CHECK(no_dephasing.sigma_c == 0.0);
  for (std::uint64_t k = 0; k < 100; ++k) CHECK(sample(no_dephasing, k).omega_prime == no_dephasing.omega_mean);
}

TEST_CASE("population") {
  CHECK(population(0.0, 0.0, 1e-9) == 1.0);
  CHECK(population(1e-9, 0.0, 1e-9) == doctest::Approx(std::exp(-1.0)));
  CHECK(population(-1.0, 50e-12, 1e-9) < 1e-300);
  CHECK(population(0.0, 50e-12, 1e-9) == doctest::Approx(0.5));
  CHECK(population(-1e-12, 0.0, 1e-9) == 0.0);
  CHECK_THROWS_AS(population(0.0, 0.0, 0.0), InvalidParameter);
}

TEST_CASE("decay time densities") {
  const auto d = reference();
  ErrorSample zero{d.omega_mean, std::vector<double>(4, 0.0)};
  CHECK(pdf_decay_times(zero, d) == doctest::Approx(std::pow(1.0 / d.tau_d, 4)));

  boost::math::quadrature::exp_sinh<double> half_line;
  const double mass = half_line.integrate([&](double t) { return pdf_decay_time(t, d); }, 0.0,
                                          std::numeric_limits<double>::infinity());
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

  const auto w = reference(d.tau_d * std::numbers::ln2);
  CHECK(w.window_mass() == doctest::Approx(0.5).epsilon(1e-14));
  const double window = gauss_kronrod<double, 31>::integrate([&](double t) { return pdf_decay_time(t, w); }, 0.0,
                                                              *w.t_bin, 10, 1e-13);
  CHECK(window == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pdf_decay_time(1.01 * *w.t_bin, w) == 0.0);
  CHECK(pdf_decay_time(-1e-15, d) == 0.0);
}

TEST_CASE("joint density") {
  const auto d = reference();
  ErrorSample s{d.omega_mean + 0.2 * d.sigma_c, {1e-10, 2e-10, 0.0, 5e-10}};
  CHECK(pdf_joint(s, d) == doctest::Approx(pdf_frequency(s.omega_prime, d) * pdf_decay_times(s, d)));
  ErrorSample mirrored = s;
  mirrored.omega_prime = d.omega_mean - 0.2 * d.sigma_c;
  CHECK(pdf_joint(mirrored, d) == doctest::Approx(pdf_joint(s, d)));
  s.decay_times[2] = -1e-12;
  CHECK(pdf_joint(s, d) == 0.0);
  CHECK_THROWS_AS(pdf_decay_times(ErrorSample{0.0, {0.0}}, d), InvalidParameter);
}

TEST_CASE("sampler moments and determinism") {
  const auto d = reference();
  const int draws = 1'000'000;
  double mean_w = 0.0;
  double mean_t = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto s = sample(d, stream_seed(99, static_cast<std::uint64_t>(i)));
    mean_w += s.omega_prime / draws;
    mean_t += s.decay_times[0] / draws;
  }
  CHECK(std::abs(mean_w - d.omega_mean) < 4 * d.sigma_c / 1e3);
  CHECK(std::abs(mean_t - d.tau_d) < 4 * d.tau_d / 1e3);

  const auto a = sample(d, 7);
  const auto b = sample(d, 7);
  CHECK(a.omega_prime == b.omega_prime);
  CHECK(a.decay_times == b.decay_times);
  CHECK(sample(d, 8).omega_prime != a.omega_prime);
}

TEST_CASE("Kolmogorov-Smirnov against the analytic distributions") {
  const std::size_t n = 100'000;
  for (std::optional<double> bin : {std::optional<double>{}, std::optional<double>{0.5e-9}}) {
    const auto d = reference(bin);
    std::vector<double> w, t;
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = sample(d, stream_seed(2024, i));
      w.push_back(s.omega_prime);
      t.push_back(s.decay_times[1]);
    }
    const double dw = ks_statistic(w, [&](double x) {
      return 0.5 * std::erfc(-(x - d.omega_mean) / (std::numbers::sqrt2 * d.sigma_c));
    });
    const double dt = ks_statistic(t, [&](double x) { return cdf_decay_time(x, d); });
    CAPTURE(bin.has_value());
    CHECK(dw < ks_critical(n));
    CHECK(dt < ks_critical(n));
    if (bin) CHECK(*std::max_element(t.begin(), t.end()) <= *bin);
  }
}

TEST_CASE("uniform generator") {
  SplitMix64 rng(0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
}
