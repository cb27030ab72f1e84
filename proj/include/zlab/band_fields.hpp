#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "zlab/projectors.hpp"
#include "zlab/quadrature.hpp"

namespace zlab {

// Uniformly sampled function with cubic (Catmull-Rom) interpolation, zero
// outside the sampled range.
struct Table1D {
  double x0 = 0.0;
  double h = 1.0;
  std::vector<double> v;

  double lo() const { return x0; }
  double hi() const { return x0 + h * (static_cast<double>(v.size()) - 1.0); }
  double operator()(double x) const;
};

template <class F>
Table1D tabulate(F&& f, double a, double b, int n) {
  Table1D t;
  t.x0 = a;
  t.h = (b - a) / (n - 1);
  t.v.resize(n);
  for (int i = 0; i < n; ++i) t.v[i] = f(a + i * t.h);
  return t;
}

// (F * G)(x) = int F(x - y) G(y) dy; both tables must share the spacing.
Table1D convolve(const Table1D& F, const Table1D& G);
// (F star G)(u) = int F(x + u) G(x) dx
Table1D correlate(const Table1D& F, const Table1D& G);

enum class BandGeometry { Annulus, Cube };

// Continuum field A(xi) B(c) on a frequency band, with c the modulation
// tau + kappa(xi) of its flavor (kappa = |xi|^2, |xi|, -|xi| for S, W+, W-).
// Envelope widths <= 0 mean flat.
struct BandFieldSpec {
  Flavor flavor = Flavor::S;
  double N = 1.0;
  double L = 1.0;
  int A = 0;  // angular sector beta^A_j; 0 for none
  int j = 0;
  BandGeometry geometry = BandGeometry::Annulus;
  std::array<double, 2> cube_center{};
  double cube_side = 1.0;

  double r0 = 0.0, sigma_r = 0.0;
  double theta0 = 0.0, sigma_theta = 0.0;
  double tilt = 0.0;  // 1 + tilt cos(theta - theta0) for fields without a sector
  std::array<double, 2> cube_offset{};
  double sigma_cube = 0.0;
  double c0 = 0.0, sigma_c = 0.0;
};

// Seed 0 keeps the flat envelopes; other seeds draw centers and widths.
BandFieldSpec randomize(BandFieldSpec s, Rng& rng, bool flat);

class BandField {
 public:
  explicit BandField(const BandFieldSpec& spec);

  const BandFieldSpec& spec() const { return s_; }
  // Unit-normalized spatial profile and modulation profile.
  double A(double x, double y) const;
  double B(double c) const { return b_(c); }
  const Table1D& B_table() const { return b_; }
  double kappa(double r) const;
  double kappa_slope_bound() const { return s_.flavor == Flavor::S ? 0.0 : 1.0; }

  // Support: r in [r_lo, r_hi] (for the cube, the bounding annulus about the
  // origin); angular arcs [a, b] with b - a <= 2 pi; c in [c_lo, c_hi].
  double r_lo = 0.0, r_hi = 0.0;
  std::vector<std::pair<double, double>> arcs;
  bool full_circle = true;
  // Cube support in Cartesian coordinates.
  std::array<double, 2> box_lo{}, box_hi{};
  // Length scale of the spatial profile used to size quadrature panels.
  double scale = 1.0;

 private:
  BandFieldSpec s_;
  Table1D radial_, angular_, b_;
  std::array<Table1D, 2> cube_;
  double norm_ = 1.0;
};

// I(f, g1, g2) for band fields: f a wave field at xi1 - xi2, g1 and g2
// Schrodinger fields at xi1 and xi2. `level` multiplies every panel count;
// level 1 is a coarse base resolution (relative error up to a few tens of
// percent) and each doubling gains about an order of magnitude.
double band_trilinear(const BandField& f, const BandField& g1, const BandField& g2, int level = 1);

// ||u v||_{L2(R^3)} of the space-time functions with transforms u and v;
// v must be a Schrodinger field.
double band_product_norm(const BandField& u, const BandField& v, int level = 1);

}  // namespace zlab
