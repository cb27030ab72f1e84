#include "zlab/counterexamples.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zlab/quadrature.hpp"

namespace zlab {

namespace {

void validate(const CounterexampleParams& p) {
  if (!(p.N >= 16.0)) throw std::invalid_argument("counterexample: requires N >= 16");
  if (!(p.sigma >= -1.0 && p.sigma < 0.0))
    throw std::invalid_argument("counterexample: sigma must lie in [-1, 0)");
}

CharacteristicField single(const BoxSpec& b) { return CharacteristicField({{b, cplx(1.0)}}); }

WeightSpec weight(Flavor f, double k, double b, const CounterexampleParams& p) {
  WeightSpec w;
  w.flavor = f;
  w.k = k;
  w.b = b;
  w.q = p.q;
  w.panels = p.panels;
  return w;
}

}  // namespace

BoxSpec counter_box(double N, double sigma, double xi1, double tau) {
  return BoxSpec({xi1, 0.0, tau},
                 {std::pow(N, sigma), std::pow(N, 0.5 * (1.0 + sigma)), std::pow(N, 1.0 + sigma)});
}

double counterexample_c1(const CounterexampleParams& p) {
  validate(p);
  const double N = p.N;
  const auto v = single(counter_box(N, p.sigma, 2.0 * N + 1.0, -2.0 * N - 1.0));
  const auto u = single(counter_box(N, p.sigma, -N, -N * N));
  const double num = product_norm(v, u, weight(Flavor::S, p.k, -p.b_prime, p));
  const double nv = weighted_norm(v, weight(Flavor::WPlus, p.ell, p.b1, p));
  const double nu = weighted_norm(u, weight(Flavor::S, p.k, p.b2, p));
  return num / (nv * nu);
}

double counterexample_c2(const CounterexampleParams& p) {
  validate(p);
  const double N = p.N;
  const auto u = single(counter_box(N, p.sigma, N + 1.0, -(N + 1.0) * (N + 1.0)));
  const auto w = single(counter_box(N, p.sigma, -N, -N * N));
  WeightSpec out = weight(Flavor::WPlus, p.ell, -p.b_prime, p);
  out.laplacian = true;
  const double num = product_norm(u, w.conjugated(), out);
  const double nu = weighted_norm(u, weight(Flavor::S, p.k, p.b1, p));
  const double nw = weighted_norm(w, weight(Flavor::S, p.k, p.b2, p));
  return num / (nu * nw);
}

double predicted_exponent_c1(const CounterexampleParams& p) {
  return -p.ell - 0.5 + (1.0 + p.sigma) * (1.25 - (p.b_prime + p.b1 + p.b2));
}

double predicted_exponent_c2(const CounterexampleParams& p) {
  return p.ell - 2.0 * p.k + 0.5 + (1.0 + p.sigma) * (1.25 - (p.b_prime + p.b1 + p.b2));
}

namespace {

struct Rect {
  double x0, x1, y0, y1;
};

Rect intersect(const Rect& a, const Rect& b) {
  return {std::max(a.x0, b.x0), std::min(a.x1, b.x1), std::max(a.y0, b.y0), std::min(a.y1, b.y1)};
}

Rect shifted(const Rect& a, double dx, double dy, double sign) {
  // {dx + sign * z : z in a}
  Rect r{dx + sign * a.x0, dx + sign * a.x1, dy + sign * a.y0, dy + sign * a.y1};
  if (r.x0 > r.x1) std::swap(r.x0, r.x1);
  if (r.y0 > r.y1) std::swap(r.y0, r.y1);
  return r;
}

Rect centered(double cx, double hx, double hy) { return {cx - hx, cx + hx, -hy, hy}; }

// (e^{i t phi} - 1) / (i phi), continuous at phi = 0
cplx time_factor(double t, double phi) {
  const double h = 0.5 * t * phi;
  const double sinc = std::fabs(h) < 1e-8 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return t * sinc * cplx(std::cos(h), std::sin(h));
}

template <class F>
double tensor_gauss(const Rect& r, int q, F&& f) {
  if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) return 0.0;
  std::vector<double> x, wx, y, wy;
  composite_gauss(r.x0, r.x1, 1, q, x, wx);
  composite_gauss(r.y0, r.y1, 1, q, y, wy);
  double acc = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) acc += wx[i] * wy[j] * f(x[i], y[j]);
  return acc;
}

// ||chi_R||_{H^s}^2 summed over the rectangles (disjoint by construction)
double sobolev_sq(const std::vector<Rect>& rects, double s, int q) {
  double acc = 0.0;
  for (const auto& r : rects)
    acc += tensor_gauss(r, q, [s](double a, double b) { return std::pow(1.0 + a * a + b * b, s); });
  return acc;
}

void validate_times(double N, double T, double t) {
  if (!(N >= 1.0) || !(T > 0.0)) throw std::invalid_argument("duhamel lower bound: need N >= 1, T > 0");
  if (!(N * T >= 4.0)) throw std::invalid_argument("duhamel lower bound: requires N >> 1/T (N T >= 4)");
  if (t < 0.0 || t > T) throw std::invalid_argument("duhamel lower bound: t outside [0, T]");
  if (t > 0.0 && N * t < 4.0)
    throw std::invalid_argument("duhamel lower bound: requires t >> 1/N (N t >= 4)");
}

}  // namespace

DuhamelRatio duhamel_lower_bound_1(double N, double T, double k, double ell, double t, int q) {
  validate_times(N, T, t);
  const Rect A = centered(-N, 1.0 / N, 1.0);
  const Rect B = centered(2.0 * N + 1.0, 2.0 / N, 2.0);
  const Rect Bm = shifted(B, 0.0, 0.0, -1.0);
  const Rect target = centered(N + 1.0, 1.0 / N, 1.0);

  auto dhat_sq = [&](double x1, double x2) {
    const double xx = x1 * x1 + x2 * x2;
    cplx acc = 0.0;
    // eta in A with xi - eta in B or -B, i.e. eta in xi - B or xi + B
    for (const Rect& src : {B, Bm}) {
      const Rect dom = intersect(A, shifted(src, x1, x2, -1.0));
      if (!(dom.x1 > dom.x0) || !(dom.y1 > dom.y0)) continue;
      std::vector<double> e1, w1, e2, w2;
      composite_gauss(dom.x0, dom.x1, 1, q, e1, w1);
      composite_gauss(dom.y0, dom.y1, 1, q, e2, w2);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          const double ee = e1[i] * e1[i] + e2[j] * e2[j];
          const double d1 = x1 - e1[i], d2 = x2 - e2[j];
          const double br = std::sqrt(1.0 + d1 * d1 + d2 * d2);
          acc += w1[i] * w2[j] * (time_factor(t, xx - ee - br) + time_factor(t, xx - ee + br));
        }
    }
    return std::norm(acc / (4.0 * kPi)) * std::pow(1.0 + xx, k);
  };
  DuhamelRatio out;
  if (t == 0.0) return out;
  const double num = std::sqrt(tensor_gauss(target, q, dhat_sq));
  const double den = std::sqrt(sobolev_sq({A}, k, q) * sobolev_sq({B, Bm}, ell, q));
  out.raw = num / den;
  out.normalized = out.raw / std::pow(N, -ell - 0.5);
  return out;
}

DuhamelRatio duhamel_lower_bound_2(double N, double T, double k, double ell, double t, int q) {
  validate_times(N, T, t);
  const Rect D1 = centered(N + 1.0, 1.0 / N, 1.0);
  const Rect D2 = centered(-N, 2.0 / N, 2.0);
  const Rect target = centered(2.0 * N + 1.0, 1.0 / N, 1.0);

  auto dhat_sq = [&](double x1, double x2) {
    const double xx = x1 * x1 + x2 * x2;
    const double bx = std::sqrt(1.0 + xx);
    cplx acc = 0.0;
    // eta in Da with eta - xi in Db
    for (const Rect& a : {D1, D2})
      for (const Rect& b : {D1, D2}) {
        const Rect dom = intersect(a, shifted(b, x1, x2, 1.0));
        if (!(dom.x1 > dom.x0) || !(dom.y1 > dom.y0)) continue;
        std::vector<double> e1, w1, e2, w2;
        composite_gauss(dom.x0, dom.x1, 1, q, e1, w1);
        composite_gauss(dom.y0, dom.y1, 1, q, e2, w2);
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) {
            const double ee = e1[i] * e1[i] + e2[j] * e2[j];
            const double d1 = e1[i] - x1, d2 = e2[j] - x2;
            acc += w1[i] * w2[j] * time_factor(t, bx - ee + d1 * d1 + d2 * d2);
          }
      }
    return std::norm(acc / (2.0 * kPi)) * std::pow(xx / bx, 2) * std::pow(1.0 + xx, ell);
  };
  DuhamelRatio out;
  if (t == 0.0) return out;
  const double num = std::sqrt(tensor_gauss(target, q, dhat_sq));
  out.raw = num / sobolev_sq({D1, D2}, k, q);
  out.normalized = out.raw / std::pow(N, ell - 2.0 * k + 0.5);
  return out;
}

}  // namespace zlab
