#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lcs {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int oracle_draws = 100;          // per photon count, n = 1..4
  std::int64_t mc_samples = 200'000;
  int random_sets = 20;
  std::uint64_t seed = 12345;
};

/// Time-domain register simulation against the closed form on random
/// schedules, dwell times, frequencies and g_ratio. Tolerance 1e-10.
std::vector<Check> verify_oracle(const VerifyOptions& options = {});

/// Ensemble quadrature against Monte Carlo (3 standard errors) on the
/// reference scenarios and on random parameter sets.
std::vector<Check> verify_quadrature_vs_mc(const VerifyOptions& options = {});

}  // namespace lcs
