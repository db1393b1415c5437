// NEON (AArch64) variants, two doubles per register. Same operation order as
// scalar.cpp so elementwise results are bit-identical.

#include <arm_neon.h>
#include <stddef.h>

#include "qmeta/kernels/abi.hpp"

namespace qmeta::kernels {
namespace {

const KernelTable& ref() { return scalar_kernels(); }

void stencil_kick(const double* a, double* a_dot, const double* coef2, double h, size_t n) {
  if (n < 4) {
    ref().stencil_kick(a, a_dot, coef2, h, n);
    return;
  }
  a_dot[0] += h * (coef2[0] * ((0.0 + a[1]) - 2.0 * a[0]));
  const float64x2_t vh = vdupq_n_f64(h);
  const float64x2_t two = vdupq_n_f64(2.0);
  size_t i = 1;
  for (; i + 2 < n; i += 2) {
    const float64x2_t lap = vsubq_f64(vaddq_f64(vld1q_f64(a + i - 1), vld1q_f64(a + i + 1)),
                                      vmulq_f64(two, vld1q_f64(a + i)));
    const float64x2_t inc = vmulq_f64(vh, vmulq_f64(vld1q_f64(coef2 + i), lap));
    vst1q_f64(a_dot + i, vaddq_f64(vld1q_f64(a_dot + i), inc));
  }
  for (; i + 1 < n; ++i) {
    a_dot[i] += h * (coef2[i] * ((a[i - 1] + a[i + 1]) - 2.0 * a[i]));
  }
  a_dot[n - 1] += h * (coef2[n - 1] * ((a[n - 2] + 0.0) - 2.0 * a[n - 1]));
}

void drift(double* a, const double* a_dot, double h, size_t n) {
  const float64x2_t vh = vdupq_n_f64(h);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(a + i, vaddq_f64(vld1q_f64(a + i), vmulq_f64(vh, vld1q_f64(a_dot + i))));
  }
  for (; i < n; ++i) a[i] += h * a_dot[i];
}

void backaction_kick(double* a_dot, const double* sin_a, const double* chi, double h, size_t n) {
  const float64x2_t vh = vdupq_n_f64(h);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(sin_a + i), vld1q_f64(chi + i));
    vst1q_f64(a_dot + i, vsubq_f64(vld1q_f64(a_dot + i), vmulq_f64(vh, prod)));
  }
  for (; i < n; ++i) a_dot[i] -= h * (sin_a[i] * chi[i]);
}

void expectation(const double* c0, const double* c1, size_t n, const ExpectationCoeffs& k,
                 double* out) {
  const float64x2_t w00 = vdupq_n_f64(k.w00);
  const float64x2_t w11 = vdupq_n_f64(k.w11);
  const float64x2_t wr = vdupq_n_f64(k.w_re);
  const float64x2_t wi = vdupq_n_f64(k.w_im);
  const float64x2_t two = vdupq_n_f64(2.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t z0 = vld2q_f64(c0 + 2 * i);
    const float64x2x2_t z1 = vld2q_f64(c1 + 2 * i);
    const float64x2_t p0 = vaddq_f64(vmulq_f64(z0.val[0], z0.val[0]), vmulq_f64(z0.val[1], z0.val[1]));
    const float64x2_t p1 = vaddq_f64(vmulq_f64(z1.val[0], z1.val[0]), vmulq_f64(z1.val[1], z1.val[1]));
    const float64x2_t coh_re =
        vaddq_f64(vmulq_f64(z0.val[0], z1.val[0]), vmulq_f64(z0.val[1], z1.val[1]));
    const float64x2_t coh_im =
        vsubq_f64(vmulq_f64(z0.val[0], z1.val[1]), vmulq_f64(z0.val[1], z1.val[0]));
    const float64x2_t cross = vsubq_f64(vmulq_f64(wr, coh_re), vmulq_f64(wi, coh_im));
    const float64x2_t diag = vaddq_f64(vmulq_f64(w00, p0), vmulq_f64(w11, p1));
    vst1q_f64(out + i, vaddq_f64(diag, vmulq_f64(two, cross)));
  }
  if (i < n) ref().expectation(c0 + 2 * i, c1 + 2 * i, n - i, k, out + i);
}

void rotate(double* c0, double* c1, const RotationBuffers& b, const RotationCoeffs& k, size_t n) {
  const float64x2_t e = vdupq_n_f64(k.e);
  const float64x2_t wr = vdupq_n_f64(k.w_re);
  const float64x2_t wi = vdupq_n_f64(k.w_im);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t z0 = vld2q_f64(c0 + 2 * i);
    const float64x2x2_t z1 = vld2q_f64(c1 + 2 * i);
    const float64x2_t r0 = z0.val[0], i0 = z0.val[1], r1 = z1.val[0], i1 = z1.val[1];
    const float64x2_t t0r = vaddq_f64(vmulq_f64(e, r0), vsubq_f64(vmulq_f64(wr, r1), vmulq_f64(wi, i1)));
    const float64x2_t t0i = vaddq_f64(vmulq_f64(e, i0), vaddq_f64(vmulq_f64(wr, i1), vmulq_f64(wi, r1)));
    const float64x2_t t1r = vsubq_f64(vaddq_f64(vmulq_f64(wr, r0), vmulq_f64(wi, i0)), vmulq_f64(e, r1));
    const float64x2_t t1i = vsubq_f64(vsubq_f64(vmulq_f64(wr, i0), vmulq_f64(wi, r0)), vmulq_f64(e, i1));
    const float64x2_t cs = vld1q_f64(b.cos_angle + i);
    const float64x2_t sn = vld1q_f64(b.sin_angle + i);
    const float64x2_t u0r = vaddq_f64(vmulq_f64(cs, r0), vmulq_f64(sn, t0i));
    const float64x2_t u0i = vsubq_f64(vmulq_f64(cs, i0), vmulq_f64(sn, t0r));
    const float64x2_t u1r = vaddq_f64(vmulq_f64(cs, r1), vmulq_f64(sn, t1i));
    const float64x2_t u1i = vsubq_f64(vmulq_f64(cs, i1), vmulq_f64(sn, t1r));
    const float64x2_t pr = vld1q_f64(b.phase_re + i);
    const float64x2_t pi = vld1q_f64(b.phase_im + i);
    float64x2x2_t out0, out1;
    out0.val[0] = vsubq_f64(vmulq_f64(pr, u0r), vmulq_f64(pi, u0i));
    out0.val[1] = vaddq_f64(vmulq_f64(pr, u0i), vmulq_f64(pi, u0r));
    out1.val[0] = vsubq_f64(vmulq_f64(pr, u1r), vmulq_f64(pi, u1i));
    out1.val[1] = vaddq_f64(vmulq_f64(pr, u1i), vmulq_f64(pi, u1r));
    vst2q_f64(c0 + 2 * i, out0);
    vst2q_f64(c1 + 2 * i, out1);
  }
  if (i < n) {
    const RotationBuffers tail{b.cos_angle + i, b.sin_angle + i, b.phase_re + i, b.phase_im + i};
    ref().rotate(c0 + 2 * i, c1 + 2 * i, tail, k, n - i);
  }
}

double field_energy(const double* a, const double* a_dot, const double* kinetic_weight,
                    double stiffness, size_t n) {
  if (n < 4) return ref().field_energy(a, a_dot, kinetic_weight, stiffness, n);
  float64x2_t kin = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(a_dot + i);
    kin = vaddq_f64(kin, vmulq_f64(vld1q_f64(kinetic_weight + i), vmulq_f64(v, v)));
  }
  double kinetic = vaddvq_f64(kin);
  for (; i < n; ++i) kinetic += kinetic_weight[i] * (a_dot[i] * a_dot[i]);

  float64x2_t str = vdupq_n_f64(0.0);
  i = 0;
  for (; i + 3 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i + 1), vld1q_f64(a + i));
    str = vaddq_f64(str, vmulq_f64(d, d));
  }
  double strain = vaddvq_f64(str) + (a[0] * a[0] + a[n - 1] * a[n - 1]);
  for (; i + 1 < n; ++i) {
    const double d = a[i + 1] - a[i];
    strain += d * d;
  }
  return 0.5 * kinetic + 0.5 * stiffness * strain;
}

double norm_deviation(const double* c0, const double* c1, size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t worst = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t z0 = vld2q_f64(c0 + 2 * i);
    const float64x2x2_t z1 = vld2q_f64(c1 + 2 * i);
    const float64x2_t p0 = vaddq_f64(vmulq_f64(z0.val[0], z0.val[0]), vmulq_f64(z0.val[1], z0.val[1]));
    const float64x2_t p1 = vaddq_f64(vmulq_f64(z1.val[0], z1.val[0]), vmulq_f64(z1.val[1], z1.val[1]));
    worst = vmaxq_f64(worst, vabsq_f64(vsubq_f64(vaddq_f64(p0, p1), one)));
  }
  double result = vmaxvq_f64(worst);
  if (i < n) {
    const double tail = ref().norm_deviation(c0 + 2 * i, c1 + 2 * i, n - i);
    if (tail > result) result = tail;
  }
  return result;
}

void populations(const double* c1, double* p1, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t z = vld2q_f64(c1 + 2 * i);
    vst1q_f64(p1 + i, vaddq_f64(vmulq_f64(z.val[0], z.val[0]), vmulq_f64(z.val[1], z.val[1])));
  }
  for (; i < n; ++i) p1[i] = c1[2 * i] * c1[2 * i] + c1[2 * i + 1] * c1[2 * i + 1];
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{
      "neon",       &stencil_kick, &drift,          &backaction_kick, &expectation,
      &rotate,      &field_energy, &norm_deviation, &populations,
  };
  return table;
}

}  // namespace qmeta::kernels
