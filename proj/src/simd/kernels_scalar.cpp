#include "zlab/simd.hpp"

namespace zlab::simd {
namespace {

void mul_real(cplx* z, const double* r, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    d[2 * i] *= r[i];
    d[2 * i + 1] *= r[i];
  }
}

void mul_complex(cplx* z, const cplx* w, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* e = reinterpret_cast<const double*>(w);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    const double c = e[2 * i], s = e[2 * i + 1];
    d[2 * i] = a * c - b * s;
    d[2 * i + 1] = a * s + b * c;
  }
}

void abs2(const cplx* z, double* out, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    out[i] = a * a + b * b;
  }
}

double weighted_abs2_sum(const cplx* z, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    acc += w[i] * (a * a + b * b);
  }
  return acc;
}

void coupled_update(cplx* v, const double* a, const cplx* x, const double* b,
                    const cplx* y, double dt, std::size_t n) {
  double* d = reinterpret_cast<double*>(v);
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i] * xs[2 * i] + b[i] * ys[2 * i];
    const double im = a[i] * xs[2 * i + 1] + b[i] * ys[2 * i + 1];
    d[2 * i] -= dt * im;
    d[2 * i + 1] += dt * re;
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", mul_real, mul_complex, abs2, weighted_abs2_sum,
                         coupled_update};
  return k;
}

}  // namespace zlab::simd
