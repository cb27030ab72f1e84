#include "zlab/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zlab/quadrature.hpp"

namespace zlab {

BoxSpec::BoxSpec(std::array<double, 3> c, std::array<double, 3> w) : center(c), widths(w) {
  for (double x : widths)
    if (!(x > 0.0)) throw std::invalid_argument("BoxSpec: widths must be positive");
}

BoxSpec BoxSpec::reflected() const { return BoxSpec({-center[0], -center[1], -center[2]}, widths); }

CharacteristicField::CharacteristicField(std::vector<std::pair<BoxSpec, cplx>> b)
    : boxes(std::move(b)) {
  if (boxes.empty()) throw std::invalid_argument("CharacteristicField: needs at least one box");
}

cplx CharacteristicField::operator()(const std::array<double, 3>& z) const {
  cplx acc = 0.0;
  for (const auto& [box, c] : boxes) {
    bool in = true;
    for (int d = 0; d < 3 && in; ++d) in = z[d] >= box.lo(d) && z[d] <= box.hi(d);
    if (in) acc += c;
  }
  return acc;
}

CharacteristicField CharacteristicField::conjugated() const {
  std::vector<std::pair<BoxSpec, cplx>> out;
  for (const auto& [box, c] : boxes) out.emplace_back(box.reflected(), std::conj(c));
  return CharacteristicField(std::move(out));
}

double WeightSpec::operator()(double xi1, double xi2, double tau) const {
  const double r2 = xi1 * xi1 + xi2 * xi2;
  const double m = modulation(flavor, tau, std::sqrt(r2));
  double w = std::pow(1.0 + r2, k) * std::pow(1.0 + m * m, b);
  if (laplacian) w *= r2 * r2 / (1.0 + r2);
  return w;
}

double interval_convolution(double ca, double wa, double cb, double wb, double x) {
  // overlap length of [x - b] with [a]
  const double lo = std::max(ca - 0.5 * wa, x - cb - 0.5 * wb);
  const double hi = std::min(ca + 0.5 * wa, x - cb + 0.5 * wb);
  return std::max(0.0, hi - lo);
}

cplx box_convolution(const CharacteristicField& F, const CharacteristicField& G,
                     const std::array<double, 3>& z) {
  cplx acc = 0.0;
  for (const auto& [a, ca] : F.boxes)
    for (const auto& [b, cb] : G.boxes) {
      double v = 1.0;
      for (int d = 0; d < 3 && v > 0.0; ++d)
        v *= interval_convolution(a.center[d], a.widths[d], b.center[d], b.widths[d], z[d]);
      if (v > 0.0) acc += ca * cb * v;
    }
  return acc;
}

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-14 * std::max(1.0, std::fabs(x))) out.push_back(x);
  return out;
}

// int weight |field|^2 over the tensor cells of the breakpoint lists.
template <class Field>
double cell_quadrature(const std::array<std::vector<double>, 3>& breaks, const Field& field,
                       const WeightSpec& w) {
  if (w.q < 1 || w.panels < 1) throw std::invalid_argument("WeightSpec: q and panels must be >= 1");
  std::array<std::vector<double>, 3> x, wt;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> px, pw;
    for (std::size_t c = 0; c + 1 < breaks[d].size(); ++c) {
      composite_gauss(breaks[d][c], breaks[d][c + 1], w.panels, w.q, px, pw);
      x[d].insert(x[d].end(), px.begin(), px.end());
      wt[d].insert(wt[d].end(), pw.begin(), pw.end());
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x[0].size(); ++i)
    for (std::size_t j = 0; j < x[1].size(); ++j) {
      double row = 0.0;
      for (std::size_t l = 0; l < x[2].size(); ++l) {
        const std::array<double, 3> z{x[0][i], x[1][j], x[2][l]};
        const double a = std::norm(field(z));
        if (a != 0.0) row += wt[2][l] * a * w(z[0], z[1], z[2]);
      }
      acc += wt[0][i] * wt[1][j] * row;
    }
  return acc;
}

}  // namespace

double weighted_norm(const CharacteristicField& F, const WeightSpec& w) {
  std::array<std::vector<double>, 3> breaks;
  for (const auto& [box, c] : F.boxes)
    for (int d = 0; d < 3; ++d) {
      breaks[d].push_back(box.lo(d));
      breaks[d].push_back(box.hi(d));
    }
  for (auto& b : breaks) b = sorted_unique(b);
  return std::sqrt(cell_quadrature(breaks, F, w));
}

double product_norm(const CharacteristicField& F, const CharacteristicField& G, const WeightSpec& w) {
  std::array<std::vector<double>, 3> breaks;
  for (const auto& [a, ca] : F.boxes)
    for (const auto& [b, cb] : G.boxes)
      for (int d = 0; d < 3; ++d) {
        const double c = a.center[d] + b.center[d];
        const double s = 0.5 * (a.widths[d] + b.widths[d]);
        const double t = 0.5 * std::fabs(a.widths[d] - b.widths[d]);
        for (double x : {c - s, c - t, c + t, c + s}) breaks[d].push_back(x);
      }
  for (auto& b : breaks) b = sorted_unique(b);
  const double scale = std::pow(2.0 * kPi, -1.5);
  auto field = [&](const std::array<double, 3>& z) { return scale * box_convolution(F, G, z); };
  return std::sqrt(cell_quadrature(breaks, field, w));
}

cplx trilinear_I_boxes(const CharacteristicField& f, const CharacteristicField& g1,
                       const CharacteristicField& g2) {
  // I = int f(d) c(d) dd with c(d) = int g1(d + z) g2(z) dz = (g1 * g2(-.))(d).
  const GaussRule& gl = gauss_legendre(2);
  cplx acc = 0.0;
  for (const auto& [bf, cf] : f.boxes)
    for (const auto& [b1, c1] : g1.boxes)
      for (const auto& [b2, c2] : g2.boxes) {
        double prod = 1.0;
        for (int d = 0; d < 3 && prod > 0.0; ++d) {
          const double cc = b1.center[d] - b2.center[d];
          const double s = 0.5 * (b1.widths[d] + b2.widths[d]);
          const double t = 0.5 * std::fabs(b1.widths[d] - b2.widths[d]);
          std::vector<double> pts{bf.lo(d), bf.hi(d)};
          for (double x : {cc - s, cc - t, cc + t, cc + s})
            if (x > bf.lo(d) && x < bf.hi(d)) pts.push_back(x);
          std::sort(pts.begin(), pts.end());
          double integral = 0.0;
          for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
            const double m = 0.5 * (pts[p] + pts[p + 1]), h = 0.5 * (pts[p + 1] - pts[p]);
            for (int i = 0; i < 2; ++i)
              integral += h * gl.w[i] *
                          interval_convolution(b1.center[d], b1.widths[d], -b2.center[d],
                                               b2.widths[d], m + h * gl.x[i]);
          }
          prod *= integral;
        }
        if (prod > 0.0) acc += cf * c1 * c2 * prod;
      }
  return acc;
}

}  // namespace zlab
