#include "lcs/scenario.hpp"

#include <toml.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace lcs {
namespace {

void reject_unknown(const toml::table& table, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, node] : table) {
    if (!allowed.count(std::string(key.str()))) {
      throw ScenarioError("unknown key '" + std::string(key.str()) + "' in " + where);
    }
  }
}

const toml::table* section(const toml::table& root, const char* name, bool required) {
  const toml::node* node = root.get(name);
  if (!node) {
    if (required) throw ScenarioError(std::string("missing section [") + name + "]");
    return nullptr;
  }
  if (!node->is_table()) throw ScenarioError(std::string("[") + name + "] must be a table");
  return node->as_table();
}

std::optional<double> number(const toml::table& t, const char* section_name, const char* key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto v = node->value<double>()) return *v;
  throw ScenarioError(std::string(section_name) + "." + key + " must be a number");
}

double required_number(const toml::table& t, const char* section_name, const char* key) {
  if (auto v = number(t, section_name, key)) return *v;
  throw ScenarioError(std::string("missing ") + section_name + "." + key);
}

std::optional<std::int64_t> integer(const toml::table& t, const char* section_name, const char* key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto v = node->value_exact<std::int64_t>()) return *v;
  throw ScenarioError(std::string(section_name) + "." + key + " must be an integer");
}

std::optional<std::string> text(const toml::table& t, const char* section_name, const char* key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto v = node->value_exact<std::string>()) return *v;
  throw ScenarioError(std::string(section_name) + "." + key + " must be a string");
}

DeviceParams read_device(const toml::table& root) {
  const toml::table& dev = *section(root, "device", true);
  const toml::table& field = *section(root, "field", true);
  reject_unknown(dev, "[device]", {"lifetime_ps", "rise_ps", "t2_star_ns", "g_ground", "g_excited", "g_ratio"});
  reject_unknown(field, "[field]", {"b_mT", "t_lg_ns", "clock_ghz"});

  DeviceParams::Emitter e;
  e.tau_d = required_number(dev, "device", "lifetime_ps") * 1e-12;
  e.tau_r = number(dev, "device", "rise_ps").value_or(0.0) * 1e-12;
  e.t2_star = required_number(dev, "device", "t2_star_ns") * 1e-9;
  const auto g_ground = number(dev, "device", "g_ground");
  const auto g_excited = number(dev, "device", "g_excited");
  const auto g_ratio = number(dev, "device", "g_ratio");
  if (g_excited && g_ratio) throw ScenarioError("[device]: give g_excited or g_ratio, not both");
  if (!g_excited && !g_ratio) throw ScenarioError("[device]: one of g_excited, g_ratio is required");
  if (g_excited && !g_ground) throw ScenarioError("[device]: g_excited needs g_ground");
  if (g_ratio) e.g_ratio = *g_ratio;
  if (g_excited) {
    if (*g_ground == 0.0) throw ScenarioError("[device]: g_ground must be nonzero");
    e.g_ratio = *g_excited / *g_ground;
  }

  const auto b = number(field, "field", "b_mT");
  const auto t_lg = number(field, "field", "t_lg_ns");
  const auto clock = number(field, "field", "clock_ghz");
  if (int(b.has_value()) + int(t_lg.has_value()) + int(clock.has_value()) != 1) {
    throw ScenarioError("[field]: exactly one of b_mT, t_lg_ns, clock_ghz is required");
  }
  if (b) {
    if (!g_ground) throw ScenarioError("[field] b_mT needs [device] g_ground");
    return DeviceParams::from_field(e, *g_ground, *b * 1e-3, g_excited);
  }
  if (t_lg) return DeviceParams::from_larmor_period(e, *t_lg * 1e-9);
  return DeviceParams::from_clock_rate(e, *clock * 1e9);
}

IntegrationMethod parse_method(const std::string& s) {
  if (s == "quadrature") return IntegrationMethod::quadrature;
  if (s == "adaptive") return IntegrationMethod::adaptive;
  if (s == "montecarlo") return IntegrationMethod::montecarlo;
  throw ScenarioError("[ensemble] method must be quadrature, adaptive or montecarlo");
}

}  // namespace

PulseSchedule Scenario::schedule() const {
  if (timing_offsets) return PulseSchedule(*timing_offsets);
  return PulseSchedule::nominal(photons);
}

Scenario parse_scenario(std::string_view source, std::string name) {
  const std::string label = name;
  toml::table root;
  try {
    root = toml::parse(source);
  } catch (const toml::parse_error& err) {
    std::ostringstream msg;
    msg << name << ": " << err.description() << " (line " << err.source().begin.line << ")";
    throw ScenarioError(msg.str());
  }
  reject_unknown(root, "scenario", {"device", "field", "protocol", "ensemble", "reference"});

  try {
    Scenario sc{std::move(name), read_device(root), 3, std::nullopt, {}, std::nullopt};

    if (const toml::table* p = section(root, "protocol", false)) {
      reject_unknown(*p, "[protocol]", {"photons", "timing_offsets_ns"});
      if (auto n = integer(*p, "protocol", "photons")) {
        if (*n < 1 || *n > 20) throw ScenarioError("[protocol] photons must be in 1..20");
        sc.photons = static_cast<int>(*n);
      }
      if (const toml::node* node = p->get("timing_offsets_ns")) {
        const toml::array* arr = node->as_array();
        if (!arr) throw ScenarioError("[protocol] timing_offsets_ns must be an array");
        std::vector<double> offsets;
        for (const auto& el : *arr) {
          auto v = el.value<double>();
          if (!v) throw ScenarioError("[protocol] timing_offsets_ns entries must be numbers");
          offsets.push_back(*v * 1e-9);
        }
        if (offsets.size() != static_cast<std::size_t>(sc.photons) + 2) {
          throw ScenarioError("[protocol] timing_offsets_ns needs photons + 2 entries");
        }
        sc.timing_offsets = std::move(offsets);
      }
    }

    if (const toml::table* en = section(root, "ensemble", false)) {
      reject_unknown(*en, "[ensemble]",
                     {"method", "hermite_order", "mc_samples", "seed", "t_bin_ns", "rel_tolerance", "mc_integrand"});
      IntegrationOptions& o = sc.integration;
      if (auto m = text(*en, "ensemble", "method")) o.method = parse_method(*m);
      if (auto v = integer(*en, "ensemble", "hermite_order")) o.hermite_order = static_cast<int>(*v);
      if (auto v = integer(*en, "ensemble", "mc_samples")) o.mc_samples = *v;
      if (auto v = integer(*en, "ensemble", "seed")) {
        if (*v < 0) throw ScenarioError("[ensemble] seed must be non-negative");
        o.seed = static_cast<std::uint64_t>(*v);
      }
      if (auto v = number(*en, "ensemble", "t_bin_ns")) o.t_bin = *v * 1e-9;
      if (auto v = number(*en, "ensemble", "rel_tolerance")) o.rel_tolerance = *v;
      if (auto m = text(*en, "ensemble", "mc_integrand")) {
        if (*m == "closed_form") {
          o.mc_integrand = McIntegrand::closed_form;
        } else if (*m == "oracle") {
          o.mc_integrand = McIntegrand::oracle;
        } else {
          throw ScenarioError("[ensemble] mc_integrand must be closed_form or oracle");
        }
      }
      o.validate();
    }

    if (const toml::table* r = section(root, "reference", false)) {
      reject_unknown(*r, "[reference]", {"label", "gate_fidelity", "state_fidelity_3", "state_fidelity_7"});
      Reference ref;
      ref.label = text(*r, "reference", "label").value_or(sc.name);
      ref.gate_fidelity = number(*r, "reference", "gate_fidelity");
      ref.state_fidelity_3 = number(*r, "reference", "state_fidelity_3");
      ref.state_fidelity_7 = number(*r, "reference", "state_fidelity_7");
      sc.reference = std::move(ref);
    }
    if (sc.timing_offsets) (void)sc.schedule();
    return sc;
  } catch (const InvalidParameter& err) {
    throw ScenarioError(label + ": " + err.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.stem().string());
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LCS_DATA_DIR"); env && *env) return env;
  return LCS_DATA_DIR;
}

std::vector<std::filesystem::path> table1_scenarios() {
  const auto dir = data_dir() / "table1";
  std::vector<std::filesystem::path> paths;
  for (const char* f : {"col1_gaas.toml", "col2_ingaas.toml", "col3_telecom.toml", "col4_trion.toml"}) {
    paths.push_back(dir / f);
  }
  return paths;
}

}  // namespace lcs
