// AVX2 variants. Operation order matches scalar.cpp term by term so the
// elementwise kernels are bit-identical to the reference; only the two
// reductions (field_energy sums) reassociate.

#include <immintrin.h>
#include <math.h>

#include "qmeta/kernels/abi.hpp"

namespace qmeta::kernels {
namespace {

const KernelTable& ref() { return scalar_kernels(); }

// [r0 i0 r1 i1], [r2 i2 r3 i3] -> re = [r0 r1 r2 r3], im = [i0 i1 i2 i3]
inline void deinterleave(const double* p, __m256d& re, __m256d& im) {
  const __m256d v0 = _mm256_loadu_pd(p);
  const __m256d v1 = _mm256_loadu_pd(p + 4);
  re = _mm256_permute4x64_pd(_mm256_unpacklo_pd(v0, v1), 0xD8);
  im = _mm256_permute4x64_pd(_mm256_unpackhi_pd(v0, v1), 0xD8);
}

inline void interleave(double* p, __m256d re, __m256d im) {
  const __m256d r = _mm256_permute4x64_pd(re, 0xD8);
  const __m256d i = _mm256_permute4x64_pd(im, 0xD8);
  _mm256_storeu_pd(p, _mm256_unpacklo_pd(r, i));
  _mm256_storeu_pd(p + 4, _mm256_unpackhi_pd(r, i));
}

void stencil_kick(const double* a, double* a_dot, const double* coef2, double h, size_t n) {
  if (n < 6) {
    ref().stencil_kick(a, a_dot, coef2, h, n);
    return;
  }
  a_dot[0] += h * (coef2[0] * ((0.0 + a[1]) - 2.0 * a[0]));
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d two = _mm256_set1_pd(2.0);
  size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d left = _mm256_loadu_pd(a + i - 1);
    const __m256d right = _mm256_loadu_pd(a + i + 1);
    const __m256d mid = _mm256_loadu_pd(a + i);
    const __m256d lap = _mm256_sub_pd(_mm256_add_pd(left, right), _mm256_mul_pd(two, mid));
    const __m256d inc = _mm256_mul_pd(vh, _mm256_mul_pd(_mm256_loadu_pd(coef2 + i), lap));
    _mm256_storeu_pd(a_dot + i, _mm256_add_pd(_mm256_loadu_pd(a_dot + i), inc));
  }
  for (; i + 1 < n; ++i) {
    a_dot[i] += h * (coef2[i] * ((a[i - 1] + a[i + 1]) - 2.0 * a[i]));
  }
  a_dot[n - 1] += h * (coef2[n - 1] * ((a[n - 2] + 0.0) - 2.0 * a[n - 1]));
}

void drift(double* a, const double* a_dot, double h, size_t n) {
  const __m256d vh = _mm256_set1_pd(h);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d inc = _mm256_mul_pd(vh, _mm256_loadu_pd(a_dot + i));
    _mm256_storeu_pd(a + i, _mm256_add_pd(_mm256_loadu_pd(a + i), inc));
  }
  for (; i < n; ++i) a[i] += h * a_dot[i];
}

void backaction_kick(double* a_dot, const double* sin_a, const double* chi, double h, size_t n) {
  const __m256d vh = _mm256_set1_pd(h);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(sin_a + i), _mm256_loadu_pd(chi + i));
    _mm256_storeu_pd(a_dot + i, _mm256_sub_pd(_mm256_loadu_pd(a_dot + i), _mm256_mul_pd(vh, prod)));
  }
  for (; i < n; ++i) a_dot[i] -= h * (sin_a[i] * chi[i]);
}

void expectation(const double* c0, const double* c1, size_t n, const ExpectationCoeffs& k,
                 double* out) {
  const __m256d w00 = _mm256_set1_pd(k.w00);
  const __m256d w11 = _mm256_set1_pd(k.w11);
  const __m256d wr = _mm256_set1_pd(k.w_re);
  const __m256d wi = _mm256_set1_pd(k.w_im);
  const __m256d two = _mm256_set1_pd(2.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r0, i0, r1, i1;
    deinterleave(c0 + 2 * i, r0, i0);
    deinterleave(c1 + 2 * i, r1, i1);
    const __m256d p0 = _mm256_add_pd(_mm256_mul_pd(r0, r0), _mm256_mul_pd(i0, i0));
    const __m256d p1 = _mm256_add_pd(_mm256_mul_pd(r1, r1), _mm256_mul_pd(i1, i1));
    const __m256d coh_re = _mm256_add_pd(_mm256_mul_pd(r0, r1), _mm256_mul_pd(i0, i1));
    const __m256d coh_im = _mm256_sub_pd(_mm256_mul_pd(r0, i1), _mm256_mul_pd(i0, r1));
    const __m256d cross = _mm256_sub_pd(_mm256_mul_pd(wr, coh_re), _mm256_mul_pd(wi, coh_im));
    const __m256d diag = _mm256_add_pd(_mm256_mul_pd(w00, p0), _mm256_mul_pd(w11, p1));
    _mm256_storeu_pd(out + i, _mm256_add_pd(diag, _mm256_mul_pd(two, cross)));
  }
  if (i < n) ref().expectation(c0 + 2 * i, c1 + 2 * i, n - i, k, out + i);
}

void rotate(double* c0, double* c1, const RotationBuffers& b, const RotationCoeffs& k, size_t n) {
  const __m256d e = _mm256_set1_pd(k.e);
  const __m256d wr = _mm256_set1_pd(k.w_re);
  const __m256d wi = _mm256_set1_pd(k.w_im);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r0, i0, r1, i1;
    deinterleave(c0 + 2 * i, r0, i0);
    deinterleave(c1 + 2 * i, r1, i1);
    const __m256d t0r =
        _mm256_add_pd(_mm256_mul_pd(e, r0), _mm256_sub_pd(_mm256_mul_pd(wr, r1), _mm256_mul_pd(wi, i1)));
    const __m256d t0i =
        _mm256_add_pd(_mm256_mul_pd(e, i0), _mm256_add_pd(_mm256_mul_pd(wr, i1), _mm256_mul_pd(wi, r1)));
    const __m256d t1r =
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(wr, r0), _mm256_mul_pd(wi, i0)), _mm256_mul_pd(e, r1));
    const __m256d t1i =
        _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(wr, i0), _mm256_mul_pd(wi, r0)), _mm256_mul_pd(e, i1));
    const __m256d cs = _mm256_loadu_pd(b.cos_angle + i);
    const __m256d sn = _mm256_loadu_pd(b.sin_angle + i);
    const __m256d u0r = _mm256_add_pd(_mm256_mul_pd(cs, r0), _mm256_mul_pd(sn, t0i));
    const __m256d u0i = _mm256_sub_pd(_mm256_mul_pd(cs, i0), _mm256_mul_pd(sn, t0r));
    const __m256d u1r = _mm256_add_pd(_mm256_mul_pd(cs, r1), _mm256_mul_pd(sn, t1i));
    const __m256d u1i = _mm256_sub_pd(_mm256_mul_pd(cs, i1), _mm256_mul_pd(sn, t1r));
    const __m256d pr = _mm256_loadu_pd(b.phase_re + i);
    const __m256d pi = _mm256_loadu_pd(b.phase_im + i);
    interleave(c0 + 2 * i, _mm256_sub_pd(_mm256_mul_pd(pr, u0r), _mm256_mul_pd(pi, u0i)),
               _mm256_add_pd(_mm256_mul_pd(pr, u0i), _mm256_mul_pd(pi, u0r)));
    interleave(c1 + 2 * i, _mm256_sub_pd(_mm256_mul_pd(pr, u1r), _mm256_mul_pd(pi, u1i)),
               _mm256_add_pd(_mm256_mul_pd(pr, u1i), _mm256_mul_pd(pi, u1r)));
  }
  if (i < n) {
    const RotationBuffers tail{b.cos_angle + i, b.sin_angle + i, b.phase_re + i, b.phase_im + i};
    ref().rotate(c0 + 2 * i, c1 + 2 * i, tail, k, n - i);
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double field_energy(const double* a, const double* a_dot, const double* kinetic_weight,
                    double stiffness, size_t n) {
  if (n < 8) return ref().field_energy(a, a_dot, kinetic_weight, stiffness, n);
  __m256d kin = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a_dot + i);
    kin = _mm256_add_pd(kin, _mm256_mul_pd(_mm256_loadu_pd(kinetic_weight + i), _mm256_mul_pd(v, v)));
  }
  double kinetic = hsum(kin);
  for (; i < n; ++i) kinetic += kinetic_weight[i] * (a_dot[i] * a_dot[i]);

  __m256d str = _mm256_setzero_pd();
  i = 0;
  for (; i + 5 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i + 1), _mm256_loadu_pd(a + i));
    str = _mm256_add_pd(str, _mm256_mul_pd(d, d));
  }
  double strain = hsum(str) + (a[0] * a[0] + a[n - 1] * a[n - 1]);
  for (; i + 1 < n; ++i) {
    const double d = a[i + 1] - a[i];
    strain += d * d;
  }
  return 0.5 * kinetic + 0.5 * stiffness * strain;
}

double norm_deviation(const double* c0, const double* c1, size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d worst = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r0, i0, r1, i1;
    deinterleave(c0 + 2 * i, r0, i0);
    deinterleave(c1 + 2 * i, r1, i1);
    const __m256d p0 = _mm256_add_pd(_mm256_mul_pd(r0, r0), _mm256_mul_pd(i0, i0));
    const __m256d p1 = _mm256_add_pd(_mm256_mul_pd(r1, r1), _mm256_mul_pd(i1, i1));
    const __m256d dev = _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_add_pd(p0, p1), one));
    worst = _mm256_max_pd(worst, dev);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double result = lanes[0];
  for (int l = 1; l < 4; ++l) result = lanes[l] > result ? lanes[l] : result;
  if (i < n) {
    const double tail = ref().norm_deviation(c0 + 2 * i, c1 + 2 * i, n - i);
    if (tail > result) result = tail;
  }
  return result;
}

void populations(const double* c1, double* p1, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    deinterleave(c1 + 2 * i, re, im);
    _mm256_storeu_pd(p1 + i, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
  }
  for (; i < n; ++i) p1[i] = c1[2 * i] * c1[2 * i] + c1[2 * i + 1] * c1[2 * i + 1];
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{
      "avx2",       &stencil_kick, &drift,          &backaction_kick, &expectation,
      &rotate,      &field_energy, &norm_deviation, &populations,
  };
  return table;
}

}  // namespace qmeta::kernels
