#include <math.h>

#include "qmeta/kernels/abi.hpp"

namespace qmeta::kernels {
namespace {

void stencil_kick(const double* a, double* a_dot, const double* coef2, double h, size_t n) {
  if (n == 0) return;
  if (n == 1) {
    a_dot[0] += h * (coef2[0] * ((0.0 + 0.0) - 2.0 * a[0]));
    return;
  }
  a_dot[0] += h * (coef2[0] * ((0.0 + a[1]) - 2.0 * a[0]));
  for (size_t i = 1; i + 1 < n; ++i) {
    a_dot[i] += h * (coef2[i] * ((a[i - 1] + a[i + 1]) - 2.0 * a[i]));
  }
  a_dot[n - 1] += h * (coef2[n - 1] * ((a[n - 2] + 0.0) - 2.0 * a[n - 1]));
}

void drift(double* a, const double* a_dot, double h, size_t n) {
  for (size_t i = 0; i < n; ++i) a[i] += h * a_dot[i];
}

void backaction_kick(double* a_dot, const double* sin_a, const double* chi, double h, size_t n) {
  for (size_t i = 0; i < n; ++i) a_dot[i] -= h * (sin_a[i] * chi[i]);
}

void expectation(const double* c0, const double* c1, size_t n, const ExpectationCoeffs& k,
                 double* out) {
  for (size_t i = 0; i < n; ++i) {
    const double r0 = c0[2 * i], i0 = c0[2 * i + 1];
    const double r1 = c1[2 * i], i1 = c1[2 * i + 1];
    const double p0 = r0 * r0 + i0 * i0;
    const double p1 = r1 * r1 + i1 * i1;
    const double coh_re = r0 * r1 + i0 * i1;
    const double coh_im = r0 * i1 - i0 * r1;
    const double cross = k.w_re * coh_re - k.w_im * coh_im;
    out[i] = (k.w00 * p0 + k.w11 * p1) + 2.0 * cross;
  }
}

void rotate(double* c0, double* c1, const RotationBuffers& b, const RotationCoeffs& k, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    const double r0 = c0[2 * i], i0 = c0[2 * i + 1];
    const double r1 = c1[2 * i], i1 = c1[2 * i + 1];
    // t0 = e c0 + w c1, t1 = conj(w) c0 - e c1
    const double t0r = k.e * r0 + (k.w_re * r1 - k.w_im * i1);
    const double t0i = k.e * i0 + (k.w_re * i1 + k.w_im * r1);
    const double t1r = (k.w_re * r0 + k.w_im * i0) - k.e * r1;
    const double t1i = (k.w_re * i0 - k.w_im * r0) - k.e * i1;
    const double cs = b.cos_angle[i], sn = b.sin_angle[i];
    // u = cs c - i sn t
    const double u0r = cs * r0 + sn * t0i;
    const double u0i = cs * i0 - sn * t0r;
    const double u1r = cs * r1 + sn * t1i;
    const double u1i = cs * i1 - sn * t1r;
    const double pr = b.phase_re[i], pi = b.phase_im[i];
    c0[2 * i] = pr * u0r - pi * u0i;
    c0[2 * i + 1] = pr * u0i + pi * u0r;
    c1[2 * i] = pr * u1r - pi * u1i;
    c1[2 * i + 1] = pr * u1i + pi * u1r;
  }
}

double field_energy(const double* a, const double* a_dot, const double* kinetic_weight,
                    double stiffness, size_t n) {
  if (n == 0) return 0.0;
  double kinetic = 0.0;
  for (size_t i = 0; i < n; ++i) kinetic += kinetic_weight[i] * (a_dot[i] * a_dot[i]);
  double strain = a[0] * a[0] + a[n - 1] * a[n - 1];
  for (size_t i = 0; i + 1 < n; ++i) {
    const double d = a[i + 1] - a[i];
    strain += d * d;
  }
  return 0.5 * kinetic + 0.5 * stiffness * strain;
}

double norm_deviation(const double* c0, const double* c1, size_t n) {
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double p0 = c0[2 * i] * c0[2 * i] + c0[2 * i + 1] * c0[2 * i + 1];
    const double p1 = c1[2 * i] * c1[2 * i] + c1[2 * i + 1] * c1[2 * i + 1];
    const double dev = fabs((p0 + p1) - 1.0);
    if (dev > worst) worst = dev;
  }
  return worst;
}

void populations(const double* c1, double* p1, size_t n) {
  for (size_t i = 0; i < n; ++i) p1[i] = c1[2 * i] * c1[2 * i] + c1[2 * i + 1] * c1[2 * i + 1];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",     &stencil_kick, &drift,          &backaction_kick, &expectation,
      &rotate,      &field_energy, &norm_deviation, &populations,
  };
  return table;
}

}  // namespace qmeta::kernels
