#include "qmeta/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmeta/error.hpp"
#include "qmeta/kernels/dispatch.hpp"
#include "qmeta/oracles.hpp"

namespace qmeta {

namespace {

// Gaussian units
constexpr double kC = 2.99792458e10;         // cm/s
constexpr double kHbar = 1.054571817e-27;    // erg s
constexpr double kE = 4.803204712570263e-10; // statC
constexpr double kStatAmpPerAmp = 2.99792458e9;
constexpr double kCmPerFarad = 8.987551787368176e11;
constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw ConfigError(std::string(name) + " must be finite");
}

void require_positive(double x, const char* name) {
  require_finite(x, name);
  if (!(x > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
}

}  // namespace

void QubitParams::validate() const {
  require_positive(epsilon, "qubit.epsilon");
  require_positive(E_J, "qubit.E_J");
  require_finite(d00, "qubit.d00");
  require_finite(d11, "qubit.d11");
  require_finite(d01, "qubit.d01");
  if (d01 < 0.0) throw ConfigError("qubit.d01 must be >= 0");
}

void MediumParams::validate() const {
  require_positive(v_tilde, "medium.v_tilde");
  require_positive(u_tilde, "medium.u_tilde");
  require_finite(r, "medium.r");
  if (r < 0.0) throw ConfigError("medium.r must be >= 0");
}

void PhysicalParams::validate() const {
  require_positive(L0, "L0");
  require_positive(D, "D");
  require_positive(W, "W");
  require_positive(I_c, "I_c");
  require_finite(C_junction, "C_junction");
  if (C_junction < 0.0) throw ConfigError("C_junction must be >= 0");
}

DerivedMedium derive_medium(const PhysicalParams& phys, double ratio,
                            std::optional<double> epsilon) {
  phys.validate();
  require_positive(ratio, "EJ_over_hbar_omegaJ");
  if (epsilon) require_positive(*epsilon, "epsilon");

  const double L0 = phys.L0 * 100.0;
  const double D = phys.D * 100.0;
  const double W = phys.W * 100.0;
  const double Ic = phys.I_c * kStatAmpPerAmp;
  const double phi0 = kPi * kHbar * kC / kE;

  DerivedMedium out;
  out.E_J_erg = phi0 * Ic / (2.0 * kPi * kC);
  out.omega_J = out.E_J_erg / (ratio * kHbar);
  const double wJ2 = out.omega_J * out.omega_J;
  const double geom = phi0 * phi0 / (32.0 * kPi * kPi * kPi * D * out.E_J_erg);
  out.bracket = geom * L0 * W * wJ2 / (kC * kC);
  const double r = wJ2 / (1.0 + out.bracket);
  const double upsilon2 = r * W * geom / L0;
  const double v = std::sqrt(upsilon2) * L0;  // cm/s
  out.v_over_c = v / kC;

  out.epsilon = epsilon ? *epsilon : qubit_spectrum(ratio, 0.25, 32).epsilon * out.omega_J;
  out.medium.r = r / (out.epsilon * out.epsilon);
  out.medium.v_tilde = v / (L0 * out.epsilon);
  out.medium.u_tilde = out.medium.v_tilde;

  out.C_tilde_cm = 4.0 * kE * kE * out.E_J_erg / (kHbar * kHbar * wJ2);
  out.C_tilde_farad = out.C_tilde_cm / kCmPerFarad;
  if (phys.C_junction > 0.0) {
    const double C = phys.C_junction * kCmPerFarad;
    out.omega_J_from_capacitance = std::sqrt(2.0 * kE * Ic / (kHbar * C));
  }
  return out;
}

LatticeLayout LatticeLayout::centered(std::size_t n_total, std::size_t n_active) {
  if (n_active + 2 > n_total) throw ConfigError("lattice: n_active must leave passive padding");
  LatticeLayout l;
  l.n_total = n_total;
  l.active_start = (n_total - n_active) / 2;
  l.active_end = l.active_start + n_active;
  return l;
}

LatticeLayout LatticeLayout::padded(std::size_t pad_left, std::size_t n_active,
                                    std::size_t pad_right) {
  LatticeLayout l;
  l.n_total = pad_left + n_active + pad_right;
  l.active_start = pad_left;
  l.active_end = pad_left + n_active;
  l.validate();
  return l;
}

void LatticeLayout::validate() const {
  if (!(active_start < active_end && active_end <= n_total))
    throw ConfigError("lattice: need 0 <= active_start < active_end <= n_total");
  if (active_start == 0 || active_end == n_total)
    throw ConfigError("lattice: passive padding must be nonempty on both sides");
}

SimState SimState::ground(const LatticeLayout& layout) {
  layout.validate();
  SimState s;
  s.a.assign(layout.n_total, 0.0);
  s.a_dot.assign(layout.n_total, 0.0);
  s.c0.assign(layout.active_count(), cplx(1.0, 0.0));
  s.c1.assign(layout.active_count(), cplx(0.0, 0.0));
  return s;
}

void SimState::check_consistent(const LatticeLayout& layout) const {
  if (a.size() != layout.n_total || a_dot.size() != layout.n_total)
    throw PreconditionError("state: field arrays do not match lattice size");
  if (c0.size() != layout.active_count() || c1.size() != layout.active_count())
    throw PreconditionError("state: qubit arrays do not match active region");
}

std::vector<double> SimState::populations() const {
  std::vector<double> p(c1.size());
  kernels::active_kernels().populations(reinterpret_cast<const double*>(c1.data()), p.data(),
                                        c1.size());
  return p;
}

double SimState::max_norm_deviation() const {
  return kernels::scalar_kernels().norm_deviation(reinterpret_cast<const double*>(c0.data()),
                                                  reinterpret_cast<const double*>(c1.data()),
                                                  c0.size());
}

double chi_expectation(cplx c0, cplx c1, double t, const QubitParams& q, const MediumParams& m) {
  const double norm = std::norm(c0) + std::norm(c1);
  if (!(std::abs(norm - 1.0) <= 1e-6))
    throw PreconditionError("chi_expectation: |c0|^2+|c1|^2 = " + std::to_string(norm));
  const cplx cross = q.d01 * std::conj(c0) * c1 * std::polar(1.0, -q.epsilon * t);
  return (m.r / q.E_J) * (q.d00 * std::norm(c0) + q.d11 * std::norm(c1) + 2.0 * cross.real());
}

double chi_static(double p1, const QubitParams& q, const MediumParams& m) {
  return (m.r / q.E_J) * (q.d00 * (1.0 - p1) + q.d11 * p1);
}

}  // namespace qmeta
