#include "zlab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace zlab {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::vector<int> shape) : shape_(std::move(shape)), size_(1) {
  if (shape_.empty()) throw std::invalid_argument("Fft: empty shape");
  for (int d : shape_) {
    if (d <= 0) throw std::invalid_argument("Fft: nonpositive dimension");
    size_ *= static_cast<std::size_t>(d);
  }
  std::lock_guard<std::mutex> lock(planner_mutex());
  buffer_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size_));
  auto* b = reinterpret_cast<fftw_complex*>(buffer_);
  plan_fwd_ = fftw_plan_dft(static_cast<int>(shape_.size()), shape_.data(), b, b, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(static_cast<int>(shape_.size()), shape_.data(), b, b, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buffer_);
}

void Fft::forward(cplx* data) {
  std::memcpy(buffer_, data, sizeof(cplx) * size_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(data, buffer_, sizeof(cplx) * size_);
}

void Fft::backward(cplx* data) {
  std::memcpy(buffer_, data, sizeof(cplx) * size_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(data, buffer_, sizeof(cplx) * size_);
}

Fft& fft2(int n) {
  thread_local std::map<int, std::unique_ptr<Fft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(std::vector<int>{n, n})).first;
  return *it->second;
}

// u_hat_k = dx^2/(2 pi) * (-1)^(k1+k2) * DFT(u)_k for samples centered at x = 0.
std::vector<cplx> to_physical(const SpatialField& u) {
  const auto& g = u.grid;
  const int n = g.n;
  std::vector<cplx> a = u.values;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      if ((i1 + i2) & 1) a[g.index(i1, i2)] = -a[g.index(i1, i2)];
  fft2(n).backward(a.data());
  const double scale = 2.0 * kPi / (g.dx() * g.dx() * double(n) * double(n));
  for (auto& z : a) z *= scale;
  return a;
}

SpatialField from_physical(const FrequencyGrid& g, std::vector<cplx> samples) {
  if (samples.size() != g.size()) throw std::invalid_argument("from_physical: size mismatch");
  const int n = g.n;
  fft2(n).forward(samples.data());
  const double scale = g.dx() * g.dx() / (2.0 * kPi);
  SpatialField out(g);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t k = g.index(i1, i2);
      out.values[k] = ((i1 + i2) & 1 ? -scale : scale) * samples[k];
    }
  return out;
}

}  // namespace zlab
