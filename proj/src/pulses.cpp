#include "qmeta/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qmeta/error.hpp"

namespace qmeta {

void PulseSpec::validate() const {
  if (!(std::isfinite(A) && A >= 0.0)) throw ConfigError("pulse.A must be >= 0");
  if (!(std::isfinite(k) && k > 0.0)) throw ConfigError("pulse.k must be > 0");
  if (!(std::isfinite(omega) && omega > 0.0)) throw ConfigError("pulse.omega must be > 0");
  if (!(std::isfinite(l) && l > 0.0)) throw ConfigError("pulse.l must be > 0");
  if (!std::isfinite(z0) || !std::isfinite(phi0)) throw ConfigError("pulse.z0/phi0 must be finite");
}

FieldArrays synthesize(const PulseSpec& spec, const LatticeLayout& layout) {
  spec.validate();
  const double n = static_cast<double>(layout.n_total);
  if (spec.z0 < 0.0 || spec.z0 > n - 1.0) {
    std::ostringstream msg;
    msg << "pulse center z0=" << spec.z0 << " outside lattice [0, " << n - 1.0 << "]";
    throw PreconditionError(msg.str());
  }
  FieldArrays out;
  out.a.assign(layout.n_total, 0.0);
  out.a_dot.assign(layout.n_total, 0.0);
  if (spec.A == 0.0) return out;

  const double sign = spec.direction == Direction::right ? 1.0 : -1.0;
  const double speed = spec.omega / spec.k;
  const double cutoff = spec.l * std::sqrt(-std::log(1e-8));
  const double l2 = spec.l * spec.l;
  for (std::size_t i = 0; i < layout.n_total; ++i) {
    const double x = static_cast<double>(i) - spec.z0;
    if (std::abs(x) > cutoff) continue;
    const double g = std::exp(-x * x / l2);
    const double th = spec.k * static_cast<double>(i) + spec.phi0;
    const double c = std::cos(th), s = std::sin(th);
    out.a[i] = 2.0 * spec.A * g * c;
    // envelope drift plus carrier rotation
    const double g_t = sign * g * 2.0 * x * speed / l2;
    out.a_dot[i] = 2.0 * spec.A * (g_t * c + sign * spec.omega * g * s);
  }
  return out;
}

SimState add_pulse(SimState state, const PulseSpec& spec, const LatticeLayout& layout) {
  state.check_consistent(layout);
  const FieldArrays f = synthesize(spec, layout);
  for (std::size_t i = 0; i < layout.n_total; ++i) {
    state.a[i] += f.a[i];
    state.a_dot[i] += f.a_dot[i];
  }
  return state;
}

std::vector<ValidityWarning> check_validity(const PulseSpec& spec, const LatticeLayout&,
                                            const MediumParams&, const QubitParams&) {
  std::vector<ValidityWarning> out;
  const double lambda = 2.0 * std::numbers::pi / spec.k;
  auto add = [&](const char* cond, double ratio, double thr, bool bad, const char* what) {
    if (!bad) return;
    std::ostringstream msg;
    msg << what << ": ratio " << ratio << " (threshold " << thr << ")";
    out.push_back({cond, ratio, thr, msg.str()});
  };
  add("l_over_lambda", spec.l / lambda, 5.0, spec.l / lambda < 5.0,
      "envelope not wide compared to the wavelength");
  add("lambda_over_L0", lambda, 10.0, lambda < 10.0,
      "wavelength too short for the continuum limit");
  add("two_A", 2.0 * spec.A, 0.5, 2.0 * spec.A > 0.5, "field not weak");
  return out;
}

}  // namespace qmeta
