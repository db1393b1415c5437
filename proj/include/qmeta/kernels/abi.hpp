#pragma once
// Inner-loop kernels of the lattice integrator.
//
// Every kernel exists as a scalar reference and as SIMD variants. Complex
// arrays are passed as interleaved (re, im) doubles, which is the layout of
// std::complex<double>. This header only depends on the C library so that the
// NEON translation unit can be built freestanding.

#include <stddef.h>

namespace qmeta::kernels {

// out[i] = w00 |c0|^2 + w11 |c1|^2 + 2 Re(w conj(c0) c1)
struct ExpectationCoeffs {
  double w00;
  double w11;
  double w_re;
  double w_im;
};

// Exact propagator of a constant Hermitian 2x2 generator theta_i * D, with
// D = dbar I + |n| M and M = [[e, w], [conj(w), -e]] (unit norm):
//   c <- phase_i * (cos_i I - i sin_i M) c
// Per-site values cos_i, sin_i, phase_i are precomputed by the caller.
struct RotationCoeffs {
  double e;
  double w_re;
  double w_im;
};

struct RotationBuffers {
  const double* cos_angle;
  const double* sin_angle;
  const double* phase_re;
  const double* phase_im;
};

struct KernelTable {
  const char* name;

  // a_dot[i] += h * (coef2[i] * ((a[i-1] + a[i+1]) - 2 a[i])), a[-1] = a[n] = 0
  void (*stencil_kick)(const double* a, double* a_dot, const double* coef2, double h, size_t n);

  // a[i] += h * a_dot[i]
  void (*drift)(double* a, const double* a_dot, double h, size_t n);

  // a_dot[i] -= h * (sin_a[i] * chi[i])
  void (*backaction_kick)(double* a_dot, const double* sin_a, const double* chi, double h,
                          size_t n);

  void (*expectation)(const double* c0, const double* c1, size_t n, const ExpectationCoeffs& k,
                      double* out);

  void (*rotate)(double* c0, double* c1, const RotationBuffers& b, const RotationCoeffs& k,
                 size_t n);

  // 0.5 sum weight[i] a_dot[i]^2 + 0.5 stiffness sum over bonds (a[i+1] - a[i])^2,
  // including the two bonds to the fixed ends.
  double (*field_energy)(const double* a, const double* a_dot, const double* kinetic_weight,
                         double stiffness, size_t n);

  // max_i | |c0_i|^2 + |c1_i|^2 - 1 |
  double (*norm_deviation)(const double* c0, const double* c1, size_t n);

  // p1[i] = |c1_i|^2
  void (*populations)(const double* c1, double* p1, size_t n);
};

const KernelTable& scalar_kernels();

#if defined(QMETA_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

#if defined(QMETA_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

}  // namespace qmeta::kernels
