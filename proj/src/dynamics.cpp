#include "qmeta/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmeta/error.hpp"
#include "qmeta/kernels/dispatch.hpp"

namespace qmeta {

namespace {

const double* flat(const std::vector<cplx>& v) { return reinterpret_cast<const double*>(v.data()); }
double* flat(std::vector<cplx>& v) { return reinterpret_cast<double*>(v.data()); }

std::vector<double> wave_speed_sq(const LatticeLayout& layout, const MediumParams& m) {
  std::vector<double> c2(layout.n_total, m.u_tilde * m.u_tilde);
  std::fill(c2.begin() + static_cast<std::ptrdiff_t>(layout.active_start),
            c2.begin() + static_cast<std::ptrdiff_t>(layout.active_end), m.v_tilde * m.v_tilde);
  return c2;
}

std::vector<double> kinetic_weights(const LatticeLayout& layout, const MediumParams& m) {
  std::vector<double> w = wave_speed_sq(layout, m);
  const double s2 = m.v_tilde * m.v_tilde;
  for (double& x : w) x = s2 / x;
  return w;
}

}  // namespace

std::vector<double> field_acceleration(const SimState& s, const LatticeLayout& layout,
                                       const MediumParams& m, const QubitParams& q) {
  s.check_consistent(layout);
  const std::size_t n = layout.n_total;
  const std::vector<double> c2 = wave_speed_sq(layout, m);
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? s.a[i - 1] : 0.0;
    const double right = i + 1 < n ? s.a[i + 1] : 0.0;
    acc[i] = c2[i] * ((left + right) - 2.0 * s.a[i]);
  }
  const cplx rot = std::polar(1.0, -q.epsilon * s.t);
  for (std::size_t j = 0; j < layout.active_count(); ++j) {
    const cplx c0 = s.c0[j], c1 = s.c1[j];
    const double chi = (m.r / q.E_J) * (q.d00 * std::norm(c0) + q.d11 * std::norm(c1) +
                                        2.0 * (q.d01 * std::conj(c0) * c1 * rot).real());
    const std::size_t i = layout.active_start + j;
    acc[i] -= std::sin(s.a[i]) * chi;
  }
  return acc;
}

std::pair<cplx, cplx> qubit_rhs(double a, cplx c0, cplx c1, double t, const QubitParams& q) {
  const double a2 = a * a;
  const cplx w = q.d01 * std::polar(1.0, -q.epsilon * t);
  const cplx mi(0.0, -1.0);
  return {mi * a2 * (q.d00 * c0 + w * c1), mi * a2 * (std::conj(w) * c0 + q.d11 * c1)};
}

double total_field_energy(const SimState& s, const LatticeLayout& layout, const MediumParams& m) {
  s.check_consistent(layout);
  const std::vector<double> w = kinetic_weights(layout, m);
  return kernels::active_kernels().field_energy(s.a.data(), s.a_dot.data(), w.data(),
                                                m.v_tilde * m.v_tilde, layout.n_total);
}

std::vector<double> field_energy_density(const SimState& s, const LatticeLayout& layout,
                                         const MediumParams& m) {
  s.check_consistent(layout);
  const std::size_t n = layout.n_total;
  const std::vector<double> w = kinetic_weights(layout, m);
  const double s2 = m.v_tilde * m.v_tilde;
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = 0.5 * w[i] * s.a_dot[i] * s.a_dot[i];
  e[0] += 0.5 * s2 * s.a[0] * s.a[0];
  e[n - 1] += 0.5 * s2 * s.a[n - 1] * s.a[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = s.a[i + 1] - s.a[i];
    e[i] += 0.25 * s2 * d * d;
    e[i + 1] += 0.25 * s2 * d * d;
  }
  return e;
}

Simulator::Simulator(LatticeLayout layout, MediumParams m, QubitParams q, double dt,
                     DynamicsOptions opts)
    : layout_(layout), m_(m), q_(q), dt_(dt), opts_(opts) {
  layout_.validate();
  m_.validate();
  q_.validate();
  const double vmax = std::max(m_.v_tilde, m_.u_tilde);
  if (!(dt_ > 0.0) || dt_ > 0.5 / vmax || dt_ > 0.1 / q_.epsilon) {
    std::ostringstream msg;
    msg << "time step dt=" << dt_ << " violates dt <= 0.5/max(v,u) = " << 0.5 / vmax
        << " and dt <= 0.1/epsilon = " << 0.1 / q_.epsilon;
    throw PreconditionError(msg.str());
  }
  k_ = opts_.kernels != nullptr ? opts_.kernels : &kernels::active_kernels();
  coef2_ = wave_speed_sq(layout_, m_);

  dbar_ = 0.5 * (q_.d00 + q_.d11);
  const double de = 0.5 * (q_.d00 - q_.d11);
  norm_n_ = std::hypot(de, q_.d01);
  e_unit_ = norm_n_ > 0.0 ? de / norm_n_ : 1.0;

  const std::size_t na = layout_.active_count();
  for (auto* v : {&chi_, &sin_a_, &cos_b_, &sin_b_, &ph_re_, &ph_im_, &a_old_}) v->assign(na, 0.0);
}

void Simulator::compute_chi(const SimState& s, double t, double* chi) const {
  const double f = m_.r / q_.E_J;
  kernels::ExpectationCoeffs k{f * q_.d00, f * q_.d11, 0.0, 0.0};
  if (opts_.mode == QubitMode::live) {
    k.w_re = f * q_.d01 * std::cos(q_.epsilon * t);
    k.w_im = -f * q_.d01 * std::sin(q_.epsilon * t);
  }
  k_->expectation(flat(s.c0), flat(s.c1), layout_.active_count(), k, chi);
}

void Simulator::drift(SimState& s, double h) const {
  k_->drift(s.a.data(), s.a_dot.data(), h, layout_.n_total);
  s.t += h;
}

void Simulator::kick(SimState& s, double h, bool rotate_qubits) const {
  k_->stencil_kick(s.a.data(), s.a_dot.data(), coef2_.data(), h, layout_.n_total);
  const std::size_t na = layout_.active_count();
  const double* a = s.a.data() + layout_.active_start;
  if (m_.r != 0.0) {
    compute_chi(s, s.t, chi_.data());
    for (std::size_t j = 0; j < na; ++j) sin_a_[j] = std::sin(a[j]);
    k_->backaction_kick(s.a_dot.data() + layout_.active_start, sin_a_.data(), chi_.data(), h, na);
  }
  if (!rotate_qubits || opts_.mode == QubitMode::frozen) return;

  for (std::size_t j = 0; j < na; ++j) {
    const double th = h * (a[j] * a[j]);
    cos_b_[j] = std::cos(th * norm_n_);
    sin_b_[j] = std::sin(th * norm_n_);
    ph_re_[j] = std::cos(th * dbar_);
    ph_im_[j] = -std::sin(th * dbar_);
  }
  const double wr = norm_n_ > 0.0 ? q_.d01 / norm_n_ : 0.0;
  const kernels::RotationCoeffs rc{e_unit_, wr * std::cos(q_.epsilon * s.t),
                                   -wr * std::sin(q_.epsilon * s.t)};
  const kernels::RotationBuffers b{cos_b_.data(), sin_b_.data(), ph_re_.data(), ph_im_.data()};
  k_->rotate(flat(s.c0), flat(s.c1), b, rc, na);
}

void Simulator::step(SimState& s, double h) const {
  const double t0 = s.t;
  if (opts_.scheme == Scheme::split4) {
    step_split4(s, h);
  } else {
    step_verlet_rk4(s, h);
  }
  s.t = t0 + h;
}

// Yoshida triple jump over drift-kick-drift. Kicks are exact: with a and t
// fixed the field velocity gets a constant force (chi is invariant under the
// qubit flow it generates) and each qubit a 2x2 unitary.
void Simulator::step_split4(SimState& s, double h) const {
  static const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
  static const double w0 = 1.0 - 2.0 * w1;
  drift(s, 0.5 * w1 * h);
  kick(s, w1 * h, true);
  drift(s, 0.5 * (w1 + w0) * h);
  kick(s, w0 * h, true);
  drift(s, 0.5 * (w0 + w1) * h);
  kick(s, w1 * h, true);
  drift(s, 0.5 * w1 * h);
}

void Simulator::step_verlet_rk4(SimState& s, double h) const {
  const double t0 = s.t;
  const std::size_t na = layout_.active_count();
  const std::size_t off = layout_.active_start;
  kick(s, 0.5 * h, false);
  std::copy_n(s.a.begin() + static_cast<std::ptrdiff_t>(off), na, a_old_.begin());
  k_->drift(s.a.data(), s.a_dot.data(), h, layout_.n_total);

  if (opts_.mode == QubitMode::live) {
    for (std::size_t j = 0; j < na; ++j) {
      const double a0 = a_old_[j], a1 = s.a[off + j];
      auto field = [&](double frac) { return a0 + frac * (a1 - a0); };
      cplx c0 = s.c0[j], c1 = s.c1[j];
      const auto k1 = qubit_rhs(field(0.0), c0, c1, t0, q_);
      const auto k2 = qubit_rhs(field(0.5), c0 + 0.5 * h * k1.first, c1 + 0.5 * h * k1.second,
                                t0 + 0.5 * h, q_);
      const auto k3 = qubit_rhs(field(0.5), c0 + 0.5 * h * k2.first, c1 + 0.5 * h * k2.second,
                                t0 + 0.5 * h, q_);
      const auto k4 = qubit_rhs(field(1.0), c0 + h * k3.first, c1 + h * k3.second, t0 + h, q_);
      s.c0[j] = c0 + (h / 6.0) * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
      s.c1[j] = c1 + (h / 6.0) * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    }
  }
  s.t = t0 + h;
  kick(s, 0.5 * h, false);
}

SimState Simulator::run(SimState s, double t_end, const Recorder& rec, std::size_t stride) const {
  s.check_consistent(layout_);
  if (t_end < s.t) throw PreconditionError("run: t_end precedes the current time");
  const double tol = 1e-9 * dt_;
  const auto n = static_cast<std::size_t>(std::floor((t_end - s.t) / dt_ + 1e-9));
  if (rec) rec(s);
  bool recorded = true;
  for (std::size_t i = 1; i <= n; ++i) {
    step(s, dt_);
    recorded = false;
    if (rec && stride > 0 && i % stride == 0) {
      rec(s);
      recorded = true;
    }
  }
  const double rem = t_end - s.t;
  if (rem > tol) {
    step(s, rem);
    recorded = false;
  }
  if (rec && !recorded) rec(s);
  return s;
}

}  // namespace qmeta
