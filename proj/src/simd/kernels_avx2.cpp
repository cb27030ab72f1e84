#include <immintrin.h>

#include "zlab/simd.hpp"

namespace zlab::simd {
namespace {

// Two complex doubles per 256-bit register, stored as [re0 im0 re1 im1].

void mul_real(cplx* z, const double* r, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128d rr = _mm_loadu_pd(r + i);
    __m256d rv = _mm256_set_m128d(_mm_unpackhi_pd(rr, rr), _mm_unpacklo_pd(rr, rr));
    __m256d zv = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(zv, rv));
  }
  for (; i < n; ++i) {
    d[2 * i] *= r[i];
    d[2 * i + 1] *= r[i];
  }
}

void mul_complex(cplx* z, const cplx* w, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* e = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(d + 2 * i);
    __m256d b = _mm256_loadu_pd(e + 2 * i);
    __m256d b_re = _mm256_movedup_pd(b);
    __m256d b_im = _mm256_permute_pd(b, 0xF);
    __m256d a_sw = _mm256_permute_pd(a, 0x5);
    // [a.re*c - a.im*s, a.im*c + a.re*s]
    __m256d t1 = _mm256_mul_pd(a, b_re);
    __m256d t2 = _mm256_mul_pd(a_sw, b_im);
    _mm256_storeu_pd(d + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  for (; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    const double c = e[2 * i], s = e[2 * i + 1];
    d[2 * i] = a * c - b * s;
    d[2 * i + 1] = a * s + b * c;
  }
}

void abs2(const cplx* z, double* out, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_loadu_pd(d + 2 * i);
    __m256d q = _mm256_loadu_pd(d + 2 * i + 4);
    __m256d pp = _mm256_mul_pd(p, p);
    __m256d qq = _mm256_mul_pd(q, q);
    // hadd gives [p0 q0 p1 q1]; reorder to [p0 p1 q0 q1]
    __m256d h = _mm256_hadd_pd(pp, qq);
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    out[i] = a * a + b * b;
  }
}

double weighted_abs2_sum(const cplx* z, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_loadu_pd(d + 2 * i);
    __m256d q = _mm256_loadu_pd(d + 2 * i + 4);
    __m256d h = _mm256_hadd_pd(_mm256_mul_pd(p, p), _mm256_mul_pd(q, q));
    __m256d m = _mm256_permute4x64_pd(h, 0xD8);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), m, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    total += w[i] * (a * a + b * b);
  }
  return total;
}

void coupled_update(cplx* v, const double* a, const cplx* x, const double* b,
                    const cplx* y, double dt, std::size_t n) {
  double* d = reinterpret_cast<double*>(v);
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  const __m256d dtv = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128d aa = _mm_loadu_pd(a + i);
    __m128d bb = _mm_loadu_pd(b + i);
    __m256d av = _mm256_set_m128d(_mm_unpackhi_pd(aa, aa), _mm_unpacklo_pd(aa, aa));
    __m256d bv = _mm256_set_m128d(_mm_unpackhi_pd(bb, bb), _mm_unpacklo_pd(bb, bb));
    __m256d s = _mm256_add_pd(_mm256_mul_pd(av, _mm256_loadu_pd(xs + 2 * i)),
                              _mm256_mul_pd(bv, _mm256_loadu_pd(ys + 2 * i)));
    // i*dt*s = [-dt*s.im, dt*s.re]
    __m256d st = _mm256_mul_pd(dtv, _mm256_permute_pd(s, 0x5));
    __m256d vv = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_addsub_pd(vv, st));
  }
  for (; i < n; ++i) {
    const double re = a[i] * xs[2 * i] + b[i] * ys[2 * i];
    const double im = a[i] * xs[2 * i + 1] + b[i] * ys[2 * i + 1];
    d[2 * i] -= dt * im;
    d[2 * i + 1] += dt * re;
  }
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{"avx2", mul_real, mul_complex, abs2, weighted_abs2_sum,
                         coupled_update};
  return &k;
}

}  // namespace zlab::simd
