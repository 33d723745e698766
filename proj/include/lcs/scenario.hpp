#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcs/ensemble.hpp"

namespace lcs {

/// Malformed or inconsistent scenario file.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Published values a scenario is expected to reproduce.
struct Reference {
  std::string label;
  std::optional<double> gate_fidelity;
  std::optional<double> state_fidelity_3;
  std::optional<double> state_fidelity_7;
};

/// A device, a field setting and the evaluation options, as read from a TOML file:
///
///   [device]   lifetime_ps, rise_ps, t2_star_ns, g_ground, g_excited | g_ratio
///   [field]    exactly one of b_mT, t_lg_ns, clock_ghz
///   [protocol] photons, timing_offsets_ns (n + 2 entries, first 0)
///   [ensemble] method, hermite_order, mc_samples, seed, t_bin_ns, rel_tolerance, mc_integrand
///   [reference] label, gate_fidelity, state_fidelity_3, state_fidelity_7
///
/// Unknown sections or keys are rejected.
struct Scenario {
  std::string name;
  DeviceParams params;
  int photons = 3;
  std::optional<std::vector<double>> timing_offsets;  // seconds
  IntegrationOptions integration;
  std::optional<Reference> reference;

  PulseSchedule schedule() const;
};

Scenario parse_scenario(std::string_view text, std::string name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

/// Directory with the shipped scenarios; LCS_DATA_DIR in the environment overrides.
std::filesystem::path data_dir();

/// The four reference device scenarios, in column order.
std::vector<std::filesystem::path> table1_scenarios();

}  // namespace lcs
