#pragma once

#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

// Unnormalized in-place complex FFT over a row-major array of the given
// shape. Plans are created with FFTW_ESTIMATE so results are reproducible.
class Fft {
 public:
  explicit Fft(std::vector<int> shape);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  // exp(-i k.x) convention
  void forward(cplx* data);
  // exp(+i k.x) convention, no 1/n scaling
  void backward(cplx* data);
  std::size_t size() const { return size_; }

 private:
  std::vector<int> shape_;
  std::size_t size_;
  cplx* buffer_;
  void* plan_fwd_;
  void* plan_bwd_;
};

// Fft instance for a square n x n array, cached per thread.
Fft& fft2(int n);

// Samples u(x_j) at the centered physical points of the grid.
std::vector<cplx> to_physical(const SpatialField& u);
SpatialField from_physical(const FrequencyGrid& g, std::vector<cplx> samples);

}  // namespace zlab
