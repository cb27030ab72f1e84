#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace zlab::simd {

using cplx = std::complex<double>;

// Elementwise kernels used by the spectral solver and the norm code.
// Every variant must produce bitwise identical results for the elementwise
// kernels; reductions may differ in summation order.
struct Kernels {
  const char* name;
  // z[i] *= r[i]
  void (*mul_real)(cplx* z, const double* r, std::size_t n);
  // z[i] *= w[i]
  void (*mul_complex)(cplx* z, const cplx* w, std::size_t n);
  // out[i] = |z[i]|^2
  void (*abs2)(const cplx* z, double* out, std::size_t n);
  // sum_i w[i] |z[i]|^2
  double (*weighted_abs2_sum)(const cplx* z, const double* w, std::size_t n);
  // v[i] += i * dt * (a[i] * x[i] + b[i] * y[i])
  void (*coupled_update)(cplx* v, const double* a, const cplx* x, const double* b,
                         const cplx* y, double dt, std::size_t n);
};

const Kernels& scalar_kernels();
// Returns nullptr when the binary was built without the AVX2 translation unit.
const Kernels* avx2_kernels();
bool cpu_has_avx2();

// Selected once per process: AVX2 when the CPU supports it, unless the
// ZLAB_SIMD environment variable is set to "scalar".
const Kernels& active();

}  // namespace zlab::simd
