#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "zlab/fft.hpp"
#include "zlab/grid.hpp"

namespace fixtures {

using zlab::cplx;

inline zlab::SpatialField sample(const zlab::FrequencyGrid& g, const std::function<cplx(double, double)>& f) {
  std::vector<cplx> p(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) p[g.index(j1, j2)] = f(g.x(j1), g.x(j2));
  return zlab::from_physical(g, std::move(p));
}

// Smooth moderate Schroedinger datum.
inline zlab::SpatialField smooth_u(const zlab::FrequencyGrid& g, double amp = 1.0) {
  return sample(g, [amp](double x, double y) {
    return amp * std::exp(-(x * x + y * y) / 4.5) * cplx(1.0, 0.3 * x);
  });
}

// Smooth real wave datum.
inline zlab::SpatialField smooth_n(const zlab::FrequencyGrid& g, double amp = 0.5) {
  return sample(g, [amp](double x, double y) { return amp * std::exp(-((x - 1) * (x - 1) + y * y) / 2.0); });
}

inline double rel_l2(const zlab::SpatialField& a, const zlab::SpatialField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace fixtures
