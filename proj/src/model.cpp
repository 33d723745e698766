#include "lcs/model.hpp"

#include <cmath>
#include <sstream>

namespace lcs {

double larmor_period(double g_ground, double field_tesla) {
  if (!std::isfinite(g_ground) || g_ground == 0.0) {
    throw InvalidParameter("larmor_period: g_ground must be finite and non-zero");
  }
  if (!(field_tesla > 0.0) || !std::isfinite(field_tesla)) {
    throw InvalidParameter("larmor_period: field must be positive");
  }
  return 2.0 * std::numbers::pi * codata::kHbar /
         (std::abs(g_ground) * codata::kBohrMagneton * field_tesla);
}

double clock_rate(double t_lg) {
  if (!(t_lg > 0.0)) throw InvalidParameter("clock_rate: t_lg must be positive");
  return 4.0 / t_lg;
}

double lcs_rate(int photons, double t_lg) {
  if (photons < 1) throw InvalidParameter("lcs_rate: need at least one photon");
  if (!(t_lg > 0.0)) throw InvalidParameter("lcs_rate: t_lg must be positive");
  return 4.0 / ((photons + 2) * t_lg);
}

DeviceParams::DeviceParams(const Emitter& emitter, double t_lg) : emitter_(emitter), t_lg_(t_lg) {
  validate(emitter_);
  if (!(t_lg_ > 0.0) || !std::isfinite(t_lg_)) {
    throw InvalidParameter("t_lg must be positive and finite");
  }
}

// tau_d == 0 is accepted as the instantaneous-decay limit and t2_star == inf as
// the dephasing-free limit.
void DeviceParams::validate(const Emitter& e) {
  if (!(e.tau_d >= 0.0) || !std::isfinite(e.tau_d)) {
    throw InvalidParameter("tau_d must be non-negative and finite");
  }
  if (!(e.tau_r >= 0.0) || !std::isfinite(e.tau_r)) {
    throw InvalidParameter("tau_r must be non-negative and finite");
  }
  if (!(e.t2_star > 0.0)) throw InvalidParameter("t2_star must be positive");
  if (!std::isfinite(e.g_ratio)) throw InvalidParameter("g_ratio must be finite");
}

DeviceParams DeviceParams::from_larmor_period(const Emitter& emitter, double t_lg) {
  return DeviceParams(emitter, t_lg);
}

DeviceParams DeviceParams::from_clock_rate(const Emitter& emitter, double rate_hz) {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw InvalidParameter("clock rate must be positive and finite");
  }
  return DeviceParams(emitter, 4.0 / rate_hz);
}

DeviceParams DeviceParams::from_field(const Emitter& emitter, double g_ground, double field_tesla,
                                      std::optional<double> g_excited) {
  Emitter e = emitter;
  if (g_excited) e.g_ratio = *g_excited / g_ground;
  DeviceParams p(e, larmor_period(g_ground, field_tesla));
  p.field_b_ = field_tesla;
  p.g_ground_ = g_ground;
  p.g_excited_ = g_excited;
  return p;
}

DeviceParams DeviceParams::with_larmor_period(double t_lg) const {
  DeviceParams p(emitter_, t_lg);
  p.g_ground_ = g_ground_;
  p.g_excited_ = g_excited_;
  return p;
}

DeviceParams DeviceParams::with_emitter(const Emitter& emitter) const {
  return DeviceParams(emitter, t_lg_);
}

std::string describe(const DeviceParams& p) {
  std::ostringstream os;
  os << "tau_d=" << p.tau_d() * 1e12 << " ps, T2*=" << p.t2_star() * 1e9
     << " ns, g_ratio=" << p.g_ratio() << ", t_lg=" << p.t_lg() * 1e9
     << " ns (clock " << p.clock_rate() * 1e-6 << " MHz)";
  return os.str();
}

}  // namespace lcs
