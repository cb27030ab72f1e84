#include "zlab/band_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"

namespace zlab {

double Table1D::operator()(double x) const {
  const int n = static_cast<int>(v.size());
  const double u = (x - x0) / h;
  if (!(u >= 0.0) || u > n - 1) return 0.0;
  int i = static_cast<int>(u);
  if (i >= n - 1) i = n - 2;
  const double t = u - i;
  auto at = [&](int k) { return k < 0 || k >= n ? 0.0 : v[k]; };
  const double p0 = at(i - 1), p1 = v[i], p2 = v[i + 1], p3 = at(i + 2);
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

Table1D convolve(const Table1D& F, const Table1D& G) {
  if (std::fabs(F.h - G.h) > 1e-12 * F.h) throw std::invalid_argument("convolve: spacing mismatch");
  const std::size_t n = F.v.size() + G.v.size() - 1;
  std::vector<cplx> a(n), b(n);
  for (std::size_t i = 0; i < F.v.size(); ++i) a[i] = F.v[i];
  for (std::size_t i = 0; i < G.v.size(); ++i) b[i] = G.v[i];
  Fft fft({static_cast<int>(n)});
  fft.forward(a.data());
  fft.forward(b.data());
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
  fft.backward(a.data());
  Table1D out;
  out.x0 = F.x0 + G.x0;
  out.h = F.h;
  out.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.v[i] = a[i].real() * F.h / static_cast<double>(n);
  return out;
}

Table1D correlate(const Table1D& F, const Table1D& G) {
  Table1D rev;
  rev.x0 = -G.hi();
  rev.h = G.h;
  rev.v.assign(G.v.rbegin(), G.v.rend());
  return convolve(F, rev);
}

namespace {

constexpr double kModulationStep = 1.0 / 64.0;
constexpr int kRadialSamples = 4097;
constexpr int kAngularSamples = 8193;
constexpr double kTruncate = 6.0;

double gauss(double x, double sigma) { return sigma > 0.0 ? std::exp(-0.5 * x * x / (sigma * sigma)) : 1.0; }

// distance between angles modulo pi
double line_distance(double a, double b) {
  double d = std::remainder(a - b, kPi);
  return std::fabs(d);
}

double l2_sq(const Table1D& t, bool radial_weight) {
  std::vector<double> x, w;
  composite_gauss(t.lo(), t.hi(), static_cast<int>(t.v.size()) / 4 + 1, 4, x, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = t(x[i]);
    acc += w[i] * f * f * (radial_weight ? x[i] : 1.0);
  }
  return acc;
}

}  // namespace

BandFieldSpec randomize(BandFieldSpec s, Rng& rng, bool flat) {
  s.sigma_r = s.sigma_theta = s.sigma_cube = s.sigma_c = 0.0;
  s.tilt = 0.0;
  s.r0 = s.theta0 = s.c0 = 0.0;
  s.cube_offset = {0.0, 0.0};
  if (flat) return s;
  if (s.geometry == BandGeometry::Annulus) {
    s.r0 = s.N < 2.0 ? rng.uniform(0.0, 1.0) : rng.uniform(0.75, 1.5) * s.N;
    s.sigma_r = rng.uniform(0.3, 1.0) * s.N;
  } else {
    s.cube_offset = {rng.uniform(-0.25, 0.25) * s.cube_side, rng.uniform(-0.25, 0.25) * s.cube_side};
    s.sigma_cube = rng.uniform(0.3, 1.0) * s.cube_side;
  }
  if (s.A > 0) {
    s.theta0 = (s.j + rng.uniform(-0.5, 0.5)) * kPi / s.A;
    s.sigma_theta = rng.uniform(0.5, 1.5) * kPi / s.A;
  } else {
    s.theta0 = rng.uniform(-kPi, kPi);
    s.tilt = 0.5;
  }
  s.c0 = rng.uniform(-1.5, 1.5) * s.L;
  s.sigma_c = rng.uniform(0.3, 1.0) * s.L;
  return s;
}

BandField::BandField(const BandFieldSpec& spec) : s_(spec) {
  if (s_.flavor == Flavor::WFull) throw std::invalid_argument("BandField: flavor must be S, W+ or W-");
  if (!is_dyadic(s_.N) || !is_dyadic(s_.L))
    throw std::invalid_argument("BandField: N and L must be powers of two");

  // modulation profile
  {
    double lo = -2.0 * s_.L, hi = 2.0 * s_.L;
    if (s_.sigma_c > 0.0) {
      lo = std::max(lo, s_.c0 - kTruncate * s_.sigma_c);
      hi = std::min(hi, s_.c0 + kTruncate * s_.sigma_c);
    }
    if (!(hi > lo)) throw std::invalid_argument("BandField: empty modulation support");
    const int n = static_cast<int>(std::ceil((hi - lo) / kModulationStep)) + 1;
    const double L = s_.L, c0 = s_.c0, sc = s_.sigma_c;
    b_ = tabulate([&](double c) { return psi_N(L, std::fabs(c)) * gauss(c - c0, sc); }, lo,
                  lo + (n - 1) * kModulationStep, n);
    const double nb = std::sqrt(l2_sq(b_, false));
    for (auto& x : b_.v) x /= nb;
  }

  if (s_.geometry == BandGeometry::Cube) {
    if (!(s_.cube_side > 0.0)) throw std::invalid_argument("BandField: cube side must be positive");
    const double d = s_.cube_side;
    double nsq = 1.0;
    for (int i = 0; i < 2; ++i) {
      const double c = s_.cube_center[i], off = s_.cube_offset[i], sg = s_.sigma_cube;
      box_lo[i] = c - 0.5 * d;
      box_hi[i] = c + 0.5 * d;
      cube_[i] = tabulate([&](double x) { return psi(4.0 * (x - c) / d) * gauss(x - c - off, sg); },
                          box_lo[i], box_hi[i], kRadialSamples);
      nsq *= l2_sq(cube_[i], false);
    }
    norm_ = std::sqrt(nsq);
    const double cx = std::clamp(0.0, box_lo[0], box_hi[0]), cy = std::clamp(0.0, box_lo[1], box_hi[1]);
    r_lo = std::hypot(cx, cy);
    r_hi = 0.0;
    std::vector<double> angles;
    for (double x : {box_lo[0], box_hi[0]})
      for (double y : {box_lo[1], box_hi[1]}) {
        r_hi = std::max(r_hi, std::hypot(x, y));
        angles.push_back(std::atan2(y, x));
      }
    if (r_lo == 0.0) {
      arcs = {{-kPi, kPi}};
      full_circle = true;
    } else {
      const double mid = std::atan2(0.5 * (box_lo[1] + box_hi[1]), 0.5 * (box_lo[0] + box_hi[0]));
      double a = 0.0, b = 0.0;
      for (double t : angles) {
        const double rel = std::remainder(t - mid, 2.0 * kPi);
        a = std::min(a, rel);
        b = std::max(b, rel);
      }
      arcs = {{mid + a, mid + b}};
      full_circle = false;
    }
    scale = 0.25 * d;
    if (s_.sigma_cube > 0.0) scale = std::min(scale, s_.sigma_cube);
    return;
  }

  // annulus
  r_lo = s_.N < 2.0 ? 0.0 : 0.5 * s_.N;
  r_hi = 2.0 * s_.N;
  if (s_.sigma_r > 0.0) {
    r_lo = std::max(r_lo, s_.r0 - kTruncate * s_.sigma_r);
    r_hi = std::min(r_hi, s_.r0 + kTruncate * s_.sigma_r);
  }
  {
    const double N = s_.N, r0 = s_.r0, sr = s_.sigma_r;
    radial_ = tabulate([&](double r) { return psi_N(N, r) * gauss(r - r0, sr); }, r_lo, r_hi,
                       kRadialSamples);
  }
  scale = s_.N < 2.0 ? 0.5 : 0.25 * s_.N;
  if (s_.sigma_r > 0.0) scale = std::min(scale, s_.sigma_r);
  double ang_sq = 0.0;
  if (s_.A > 0) {
    const int A = s_.A, j = s_.j;
    const double t0 = s_.theta0, st = s_.sigma_theta;
    angular_ = tabulate(
        [&](double t) { return beta_A_j(A, j, t) * gauss(line_distance(t, t0), st); }, -kPi, kPi,
        kAngularSamples);
    ang_sq = l2_sq(angular_, false);
    const double c = j * kPi / A, w = 2.0 * kPi / A;
    arcs = {{c - w, c + w}, {c - kPi - w, c - kPi + w}};
    full_circle = false;
  } else {
    arcs = {{-kPi, kPi}};
    full_circle = true;
    ang_sq = 2.0 * kPi * (1.0 + 0.5 * s_.tilt * s_.tilt);
  }
  norm_ = std::sqrt(l2_sq(radial_, true) * ang_sq);
}

double BandField::kappa(double r) const {
  switch (s_.flavor) {
    case Flavor::S: return r * r;
    case Flavor::WPlus: return r;
    case Flavor::WMinus: return -r;
    default: return 0.0;
  }
}

double BandField::A(double x, double y) const {
  if (s_.geometry == BandGeometry::Cube) return cube_[0](x) * cube_[1](y) / norm_;
  const double r = std::hypot(x, y);
  if (r < r_lo || r > r_hi) return 0.0;
  const double rad = radial_(r);
  if (rad == 0.0) return 0.0;
  double ang;
  if (s_.A > 0) {
    ang = angular_(std::atan2(y, x));
  } else {
    ang = 1.0;
    if (s_.tilt != 0.0 && r > 0.0)
      ang += s_.tilt * (x * std::cos(s_.theta0) + y * std::sin(s_.theta0)) / r;
  }
  return rad * ang / norm_;
}

namespace {

using Intervals = std::vector<std::pair<double, double>>;

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const double lo = std::max(x.first, y.first), hi = std::min(x.second, y.second);
      if (hi > lo) out.push_back({lo, hi});
    }
  return out;
}

// {q : lo <= |P + q d| <= hi} for unit d orthogonal to P, |P| = p.
Intervals annulus_chord(double p, double lo, double hi) {
  const double outer = hi * hi - p * p;
  if (outer <= 0.0) return {};
  const double a = std::sqrt(outer);
  const double inner = lo * lo - p * p;
  if (inner <= 0.0) return {{-a, a}};
  const double b = std::sqrt(inner);
  return {{-a, -b}, {b, a}};
}

// {q : a + b q >= 0} intersected with [lo, hi]
Intervals half_line(double a, double b, double lo, double hi) {
  if (b == 0.0) return a >= 0.0 ? Intervals{{lo, hi}} : Intervals{};
  const double q = -a / b;
  if (b > 0.0) return q < hi ? Intervals{{std::max(lo, q), hi}} : Intervals{};
  return q > lo ? Intervals{{lo, std::min(hi, q)}} : Intervals{};
}

// {q : direction of P + q d lies in one of the arcs}
Intervals arc_chord(const std::vector<std::pair<double, double>>& arcs, double px, double py, double dx,
                    double dy, double lo, double hi) {
  Intervals out;
  for (const auto& [a, b] : arcs) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    // cross(u_a, X) >= 0 and cross(X, u_b) >= 0 with X = P + q d
    auto i1 = half_line(ca * py - sa * px, ca * dy - sa * dx, lo, hi);
    auto i2 = half_line(px * sb - py * cb, dx * sb - dy * cb, lo, hi);
    for (const auto& x : intersect(i1, i2)) out.push_back(x);
  }
  return out;
}

struct Nodes {
  std::vector<double> x, w;
};

// Panel widths at level 1 in units of the local length scale.
constexpr double kBaseWidth = 4.0;

Nodes panels(double a, double b, double width, int level, int q = 4) {
  Nodes n;
  width *= kBaseWidth;
  if (!(b > a)) return n;
  const int p = std::max(1, static_cast<int>(std::ceil((b - a) / width))) * level;
  composite_gauss(a, b, p, q, n.x, n.w);
  return n;
}

Table1D trimmed(Table1D t) {
  double m = 0.0;
  for (double x : t.v) m = std::max(m, std::fabs(x));
  std::size_t a = 0, b = t.v.size();
  while (a + 4 < b && std::fabs(t.v[a]) <= 1e-15 * m) ++a;
  while (b > a + 4 && std::fabs(t.v[b - 1]) <= 1e-15 * m) --b;
  a = a > 0 ? a - 1 : a;
  b = b < t.v.size() ? b + 1 : b;
  Table1D out;
  out.x0 = t.x0 + a * t.h;
  out.h = t.h;
  out.v.assign(t.v.begin() + a, t.v.begin() + b);
  return out;
}

double angular_width(const BandField& g) {
  if (g.full_circle) return kPi / 8.0;
  return g.spec().A > 0 ? 0.5 * kPi / g.spec().A : 0.25 * (g.arcs[0].second - g.arcs[0].first);
}

}  // namespace

double band_trilinear(const BandField& f, const BandField& g1, const BandField& g2, int level) {
  if (f.spec().flavor == Flavor::S || g1.spec().flavor != Flavor::S || g2.spec().flavor != Flavor::S)
    throw std::invalid_argument("band_trilinear: expects a wave field and two Schrodinger fields");
  if (f.spec().geometry != BandGeometry::Annulus || g1.spec().geometry != BandGeometry::Annulus ||
      g2.spec().geometry != BandGeometry::Annulus)
    throw std::invalid_argument("band_trilinear: annulus fields only");
  if (level < 1) throw std::invalid_argument("band_trilinear: level must be >= 1");

  // K(s) = int B1(c1) B2(c2) Bf(c1 - c2 + s)
  const Table1D K = trimmed(correlate(f.B_table(), correlate(g1.B_table(), g2.B_table())));
  const double k_width = (K.hi() - K.lo()) / 8.0;

  const double qscale = std::min(g1.scale, g2.scale);
  double theta_w = std::min(angular_width(g1), angular_width(g2));
  theta_w = std::min(theta_w, 2.0 * qscale / std::max(g1.r_hi, g2.r_hi));
  const Nodes rf = panels(f.r_lo, f.r_hi, f.scale, level);
  const Nodes tf = panels(-kPi, kPi, theta_w, level);
  const double big = g1.r_hi + g2.r_hi + f.r_hi + 1.0;

  double total = 0.0;
  for (std::size_t ir = 0; ir < rf.x.size(); ++ir) {
    const double r = rf.x[ir];
    const double base_s = f.kappa(r) - r * r;
    // feasible p: |p| <= R2 and |r + p| <= R1
    const double pmin = std::max(-g2.r_hi, -g1.r_hi - r), pmax = std::min(g2.r_hi, g1.r_hi - r);
    if (pmin >= pmax) continue;
    const double s_lo = std::max(K.lo(), base_s - 2.0 * r * pmax);
    const double s_hi = std::min(K.hi(), base_s - 2.0 * r * pmin);
    if (s_lo >= s_hi) continue;
    const Nodes sn = panels(s_lo, s_hi, std::min(k_width, 2.0 * r * qscale), level);
    for (std::size_t it = 0; it < tf.x.size(); ++it) {
      const double ex = std::cos(tf.x[it]), ey = std::sin(tf.x[it]);
      const double af = f.A(r * ex, r * ey);
      if (af == 0.0) continue;
      double inner = 0.0;
      for (std::size_t is = 0; is < sn.x.size(); ++is) {
        const double kv = K(sn.x[is]);
        if (kv == 0.0) continue;
        const double p = (base_s - sn.x[is]) / (2.0 * r);
        // xi2 = p e + q e_perp, xi1 = (r + p) e + q e_perp, e_perp = (-ey, ex)
        Intervals I = intersect(annulus_chord(p, g2.r_lo, g2.r_hi), annulus_chord(r + p, g1.r_lo, g1.r_hi));
        if (I.empty()) continue;
        if (!g2.full_circle) I = intersect(I, arc_chord(g2.arcs, p * ex, p * ey, -ey, ex, -big, big));
        if (!g1.full_circle)
          I = intersect(I, arc_chord(g1.arcs, (r + p) * ex, (r + p) * ey, -ey, ex, -big, big));
        double line = 0.0;
        for (const auto& [qa, qb] : I) {
          double width = qscale;
          if (!g1.full_circle || !g2.full_circle) {
            const double rr = std::max(std::fabs(p), std::fabs(r + p)) + 0.5 * (qb + qa);
            width = std::min(width, std::max(std::fabs(rr), 1.0) * std::min(angular_width(g1), angular_width(g2)));
          }
          const Nodes qn = panels(qa, qb, width, level);
          for (std::size_t iq = 0; iq < qn.x.size(); ++iq) {
            const double q = qn.x[iq];
            const double a2 = g2.A(p * ex - q * ey, p * ey + q * ex);
            if (a2 == 0.0) continue;
            line += qn.w[iq] * a2 * g1.A((r + p) * ex - q * ey, (r + p) * ey + q * ex);
          }
        }
        inner += sn.w[is] * kv * line;
      }
      total += rf.w[ir] * tf.w[it] * af * inner;
    }
  }
  // d xi_f = r dr dtheta, d xi2 = dq ds / (2 r)
  return 0.5 * total;
}

namespace {

// Arc of directions w with |P + rho w| <= R, as [center - half, center + half].
bool disk_arc(double px, double py, double rho, double R, double& center, double& half) {
  const double P = std::hypot(px, py);
  if (rho == 0.0 || P == 0.0) {
    center = 0.0;
    half = (P <= R) ? kPi : -1.0;
    return half >= 0.0;
  }
  const double c = (R * R - P * P - rho * rho) / (2.0 * rho * P);
  center = std::atan2(-py, -px);
  if (c >= 1.0) {
    half = kPi;
    return true;
  }
  if (c < -1.0) return false;
  half = kPi - std::acos(c);
  return true;
}

// Intersection of two arcs given as center +- half (half = pi means full).
std::vector<std::pair<double, double>> arc_intersection(double c1, double h1, double c2, double h2) {
  if (h1 >= kPi && h2 >= kPi) return {{-kPi, kPi}};
  if (h1 >= kPi) return {{c2 - h2, c2 + h2}};
  if (h2 >= kPi) return {{c1 - h1, c1 + h1}};
  std::vector<std::pair<double, double>> out;
  for (int k = -1; k <= 1; ++k) {
    const double c = c2 + 2.0 * kPi * k;
    const double lo = std::max(c1 - h1, c - h2), hi = std::min(c1 + h1, c + h2);
    if (hi > lo) out.push_back({lo, hi});
  }
  return out;
}

}  // namespace

double band_product_norm(const BandField& u, const BandField& v, int level) {
  if (v.spec().flavor != Flavor::S) throw std::invalid_argument("band_product_norm: v must be a Schrodinger field");
  if (level < 1) throw std::invalid_argument("band_product_norm: level must be >= 1");
  const bool sch = u.spec().flavor == Flavor::S;
  const bool cube = u.spec().geometry == BandGeometry::Cube;
  if (sch && cube) throw std::invalid_argument("band_product_norm: cube fields must be wave fields");

  const Table1D R = trimmed(correlate(convolve(u.B_table(), v.B_table()), convolve(u.B_table(), v.B_table())));
  const double r_width = (R.hi() - R.lo()) / 8.0;

  // u support seen from its center
  double ucx = 0.0, ucy = 0.0, u_ext = u.r_hi;
  if (cube) {
    ucx = u.spec().cube_center[0];
    ucy = u.spec().cube_center[1];
    u_ext = std::hypot(0.5 * (u.box_hi[0] - u.box_lo[0]), 0.5 * (u.box_hi[1] - u.box_lo[1]));
  }
  const double kmax = sch ? 0.0 : u.r_hi;  // |kappa_u| bound on its support
  // Psi + shift = t^2 >= 0 parametrizes the level sets
  const double shift = u.spec().flavor == Flavor::WMinus ? kmax : 0.0;
  // with |eta| >= 1 the level sets cross each ray from the origin once
  if (!sch && v.r_lo < 1.0) throw std::invalid_argument("band_product_norm: wave products need a Schrodinger band N >= 2");
  const double tscale = std::min(u.scale, v.scale);
  const double xscale = std::max(u.scale, v.scale);
  const Nodes xr = panels(std::max(0.0, v.r_lo - u_ext), v.r_hi + u_ext, xscale, level);
  const Nodes xt = panels(-kPi, kPi, kPi / 8.0, level);

  double total = 0.0;
  std::vector<double> mu;
  for (std::size_t ir = 0; ir < xr.x.size(); ++ir)
    for (std::size_t it = 0; it < xt.x.size(); ++it) {
      const double X = ucx + xr.x[ir] * std::cos(xt.x[it]);
      const double Y = ucy + xr.x[ir] * std::sin(xt.x[it]);
      const double xx = X * X + Y * Y;

      // mu on a uniform t grid; s = S(t)
      double t_lo, t_hi;
      if (sch) {
        t_lo = 0.0;
        t_hi = 0.5 * (u.r_hi + v.r_hi);
      } else {
        t_lo = std::sqrt(std::max(0.0, v.r_lo * v.r_lo - kmax + shift));
        t_hi = std::sqrt(v.r_hi * v.r_hi + kmax + shift);
      }
      const int nt = std::max(8, static_cast<int>(std::ceil((t_hi - t_lo) / (0.5 * tscale * kBaseWidth)))) * level + 1;
      const double ht = (t_hi - t_lo) / (nt - 1);
      mu.assign(nt, 0.0);
      bool any = false;
      for (int k = 0; k < nt; ++k) {
        const double t = t_lo + k * ht;
        std::vector<std::pair<double, double>> arcs;
        double c1, h1, c2, h2;
        if (sch) {
          // eta = xi/2 + t w; |eta| <= R_v and |xi - eta| <= R_u
          if (!disk_arc(0.5 * X, 0.5 * Y, t, v.r_hi, c1, h1)) continue;
          if (!disk_arc(-0.5 * X, -0.5 * Y, t, u.r_hi, c2, h2)) continue;
          arcs = arc_intersection(c1, h1, c2, h2);
        } else {
          // eta = rho w with rho near t; xi - eta in the u support
          const double margin = std::sqrt(std::max(0.0, t * t - shift + kmax)) - std::sqrt(std::max(0.0, t * t - shift - kmax));
          if (!disk_arc(ucx - X, ucy - Y, t, u_ext + margin, c1, h1)) continue;
          arcs = arc_intersection(c1, h1, 0.0, kPi);
        }
        double acc = 0.0;
        for (const auto& [a, b] : arcs) {
          const double width = std::max(1e-3, std::min(kPi / 8.0, tscale / std::max(t, 1e-9)));
          const Nodes wn = panels(a, b, width, level);
          for (std::size_t iw = 0; iw < wn.x.size(); ++iw) {
            const double cw = std::cos(wn.x[iw]), sw = std::sin(wn.x[iw]);
            if (sch) {
              const double ex = 0.5 * X + t * cw, ey = 0.5 * Y + t * sw;
              const double av = v.A(ex, ey);
              if (av != 0.0) acc += wn.w[iw] * 0.25 * av * u.A(X - ex, Y - ey);
              continue;
            }
            // solve rho^2 + kappa_u(|xi - rho w|) + shift = t^2
            double lo = std::sqrt(std::max(0.0, t * t - shift - kmax)), hi = std::sqrt(std::max(0.0, t * t - shift + kmax));
            double rho = t;
            auto F = [&](double r, double& dF) {
              const double dx = X - r * cw, dy = Y - r * sw, d = std::max(std::hypot(dx, dy), 1e-300);
              dF = 2.0 * r + (u.spec().flavor == Flavor::WPlus ? 1.0 : -1.0) * (r - (X * cw + Y * sw)) / d;
              return r * r + u.kappa(d) + shift - t * t;
            };
            double dF = 0.0;
            for (int iter = 0; iter < 60; ++iter) {
              const double val = F(rho, dF);
              if (val > 0.0) hi = rho; else lo = rho;
              double next = rho - val / dF;
              if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
              if (std::fabs(next - rho) <= 1e-13 * std::max(1.0, rho)) {
                rho = next;
                break;
              }
              rho = next;
            }
            if (rho < v.r_lo || rho > v.r_hi) continue;
            F(rho, dF);
            const double av = v.A(rho * cw, rho * sw);
            if (av != 0.0) acc += wn.w[iw] * av * u.A(X - rho * cw, Y - rho * sw) * rho / dF;
          }
        }
        mu[k] = acc;
        any = any || acc != 0.0;
      }
      if (!any) continue;
      Table1D mt;
      mt.x0 = t_lo;
      mt.h = ht;
      mt.v = mu;
      const double s0 = sch ? 0.5 * xx : 0.0;
      auto S = [&](double t) { return sch ? 2.0 * t * t + s0 : t * t; };
      auto dS = [&](double t) { return sch ? 4.0 * t : 2.0 * t; };
      auto Sinv = [&](double s) { return sch ? std::sqrt(std::max(0.0, 0.5 * (s - s0))) : std::sqrt(std::max(0.0, s)); };

      double val = 0.0;
      const Nodes tn = panels(t_lo, t_hi, 0.5 * tscale, level);
      for (std::size_t k = 0; k < tn.x.size(); ++k) {
        const double t = tn.x[k];
        const double m = mt(t);
        if (m == 0.0) continue;
        const double s = S(t);
        // mu vanishes below S(t_lo)
        const double dmax = std::min(R.hi(), s - S(t_lo));
        const Nodes dn = panels(R.lo(), dmax, std::min(r_width, dS(t) * tscale), level);
        double in = 0.0;
        for (std::size_t id = 0; id < dn.x.size(); ++id)
          in += dn.w[id] * R(dn.x[id]) * mt(Sinv(s - dn.x[id]));
        val += tn.w[k] * dS(t) * m * in;
      }
      total += xr.w[ir] * xt.w[it] * xr.x[ir] * val;
    }
  return std::sqrt(std::max(0.0, total) / std::pow(2.0 * kPi, 3));
}

}  // namespace zlab
