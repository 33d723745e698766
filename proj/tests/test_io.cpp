#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lcs/csv.hpp"
#include "lcs/scenario.hpp"

using namespace lcs;

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10'000; ++i) {
    const double x = u(rng) * std::pow(10.0, 30 * u(rng));
    CHECK(parse_number(format_number(x)) == x);
  }
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1e-9) == "1e-09");
  CHECK(std::isinf(parse_number(format_number(std::numeric_limits<double>::infinity()))));
  CHECK(std::isnan(parse_number("nan")));
  CHECK_THROWS(parse_number("1.0x"));
  CHECK_THROWS(parse_number(""));
}

TEST_CASE("csv round trip") {
  CsvTable t{{"t_lg_ns", "gate_fidelity"}, {{10.0, 0.9}, {12.5, 0.91234567890123}}};
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "t_lg_ns,gate_fidelity\n10,0.9\n12.5,0.91234567890123\n");
  std::istringstream in(out.str());
  const CsvTable back = read_csv(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);

  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS(read_csv(ragged));
  CsvTable bad{{"a"}, {{1.0, 2.0}}};
  std::ostringstream sink;
  CHECK_THROWS(write_csv(sink, bad));
}

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario(R"(
[device]
lifetime_ps = 398
t2_star_ns = 30
g_ratio = -3.0

[field]
clock_ghz = 0.456

[protocol]
photons = 2
timing_offsets_ns = [0, 0.1, 0.2, 0.3]

[ensemble]
method = "montecarlo"
mc_samples = 5000
seed = 3
t_bin_ns = 1.5
)");
  CHECK(s.params.tau_d() == doctest::Approx(398e-12));
  CHECK(s.params.t_lg() == doctest::Approx(4.0 / 456e6));
  CHECK(s.photons == 2);
  CHECK(s.schedule().offset(3) == doctest::Approx(0.3e-9));
  CHECK(s.integration.method == IntegrationMethod::montecarlo);
  CHECK(s.integration.mc_samples == 5000);
  CHECK(*s.integration.t_bin == doctest::Approx(1.5e-9));
  CHECK_FALSE(s.reference);
}

TEST_CASE("field from g-factors") {
  const Scenario s = parse_scenario(R"(
[device]
lifetime_ps = 100
t2_star_ns = 10
g_ground = -0.12
g_excited = 0.37
[field]
b_mT = 50
)");
  CHECK(s.params.g_ratio() == doctest::Approx(0.37 / -0.12));
  CHECK(s.params.t_lg() == doctest::Approx(larmor_period(-0.12, 0.05)));
}

TEST_CASE("scenario validation") {
  const std::string device = "[device]\nlifetime_ps = 100\nt2_star_ns = 10\ng_ratio = 1\n";
  CHECK_THROWS_AS(parse_scenario(device), ScenarioError);                                   // no field
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = 5\nclock_ghz = 1\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg = 5\n"), ScenarioError);          // no unit suffix
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = 5\n[extra]\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = -5\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = \"5\"\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nb_mT = 5\n"), ScenarioError);           // needs g_ground
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = 5\n[protocol]\nphotons = 2\n"
                                          "timing_offsets_ns = [0, 1]\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = 5\n[ensemble]\nmethod = \"simpson\"\n"),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario(device + "[field]\nt_lg_ns = 5\n[ensemble]\nhermite_order = 2\n"),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[device\n"), ScenarioError);
  CHECK_NOTHROW(parse_scenario(device + "[field]\nt_lg_ns = 5\n"));
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.toml"), ScenarioError);
}

TEST_CASE("shipped reference scenarios") {
  const auto paths = table1_scenarios();
  REQUIRE(paths.size() == 4);
  const double clocks[] = {1.0e9, 456e6, 212e6, 1.23e9};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Scenario s = load_scenario(paths[i]);
    REQUIRE(s.reference);
    CHECK(s.reference->gate_fidelity);
    CHECK(s.reference->state_fidelity_3);
    CHECK(s.reference->state_fidelity_7);
    CHECK(s.params.clock_rate() == doctest::Approx(clocks[i]));
  }
}
