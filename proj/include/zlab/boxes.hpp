#pragma once

#include <array>
#include <utility>
#include <vector>

#include "zlab/grid.hpp"
#include "zlab/projectors.hpp"

namespace zlab {

// Axis-aligned box in (xi1, xi2, tau).
struct BoxSpec {
  std::array<double, 3> center{};
  std::array<double, 3> widths{1.0, 1.0, 1.0};

  BoxSpec() = default;
  BoxSpec(std::array<double, 3> center, std::array<double, 3> widths);
  double lo(int d) const { return center[d] - 0.5 * widths[d]; }
  double hi(int d) const { return center[d] + 0.5 * widths[d]; }
  BoxSpec reflected() const;  // {-z : z in box}
};

// sum_i c_i chi_{box_i}, represented exactly.
struct CharacteristicField {
  std::vector<std::pair<BoxSpec, cplx>> boxes;

  CharacteristicField() = default;
  explicit CharacteristicField(std::vector<std::pair<BoxSpec, cplx>> boxes);
  cplx operator()(const std::array<double, 3>& z) const;
  // Transform of the conjugate function: z -> conj(F(-z)).
  CharacteristicField conjugated() const;
};

// Weight <xi>^{2k} <m>^{2b} (times (|xi|^2/<xi>)^2 with `laplacian`), where m is
// the modulation of the flavor. Norms are ( int weight |F|^2 )^{1/2}.
struct WeightSpec {
  Flavor flavor = Flavor::S;
  double k = 0.0;
  double b = 0.0;
  bool laplacian = false;
  int q = 16;       // Gauss-Legendre points per dimension per cell
  int panels = 1;   // each cell is split into this many panels per dimension

  double operator()(double xi1, double xi2, double tau) const;
};

// (chi_[a] * chi_[b])(x) for intervals of the given centers and widths.
double interval_convolution(double ca, double wa, double cb, double wb, double x);

// (F * G)(z) = int F(z - y) G(y) dy, exact.
cplx box_convolution(const CharacteristicField& F, const CharacteristicField& G,
                     const std::array<double, 3>& z);

double weighted_norm(const CharacteristicField& F, const WeightSpec& w);
// Weighted norm of (2 pi)^{-3/2} F * G, the transform of a product.
double product_norm(const CharacteristicField& F, const CharacteristicField& G, const WeightSpec& w);

// I(f, g1, g2) = int f(z1 - z2) g1(z1) g2(z2), exact (piecewise linear in each dimension).
cplx trilinear_I_boxes(const CharacteristicField& f, const CharacteristicField& g1,
                       const CharacteristicField& g2);

}  // namespace zlab
