#include "zlab/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "zlab/cutoff.hpp"
#include "zlab/fit.hpp"
#include "zlab/norms.hpp"
#include "zlab/trilinear.hpp"

namespace zlab {

const char* to_string(BilinearCase c) {
  switch (c) {
    case BilinearCase::SchSch: return "SchSch";
    case BilinearCase::WaveSchCube: return "WaveSchCube";
    case BilinearCase::WaveSchAnnulus: return "WaveSchAnnulus";
  }
  return "?";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::TransLowMod: return "TransLowMod";
    case Regime::TransHighMod: return "TransHighMod";
    case Regime::ParallelHH: return "ParallelHH";
    case Regime::HighLow: return "HighLow";
    case Regime::SmallWave: return "SmallWave";
  }
  return "?";
}

BilinearCase parse_bilinear_case(const std::string& s) {
  for (auto c : {BilinearCase::SchSch, BilinearCase::WaveSchCube, BilinearCase::WaveSchAnnulus})
    if (s == to_string(c)) return c;
  throw std::invalid_argument("unknown bilinear case: " + s);
}

Regime parse_regime(const std::string& s) {
  for (auto r : {Regime::TransLowMod, Regime::TransHighMod, Regime::ParallelHH, Regime::HighLow, Regime::SmallWave})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown regime: " + s);
}

namespace {

constexpr double kRel = 4.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("hypothesis violated: " + what);
}

bool dyadic_at_least_one(double x) { return x >= 1.0 && is_dyadic(x); }

void require_scales(const TileSpec& t) {
  for (auto [name, x] : {std::pair{"N", t.N}, {"N1", t.N1}, {"N2", t.N2}, {"L", t.L}, {"L1", t.L1}, {"L2", t.L2}})
    require(dyadic_at_least_one(x), std::string(name) + " is a dyadic scale >= 1");
  require(t.sign == 1 || t.sign == -1, "sign is +1 or -1");
}

bool lesssim(double a, double b) { return a <= kRel * b; }
bool sim(double a, double b) { return lesssim(a, b) && lesssim(b, a); }
bool ll(double a, double b) { return kRel * a <= b; }

void require_angles(const TileSpec& t) {
  require(t.A.has_value(), "angular parameter A is given");
  require(t.j1.has_value() && t.j2.has_value(), "sector indices j1, j2 are given");
  require(is_dyadic(*t.A), "A is dyadic");
}

Flavor wave_flavor(const TileSpec& t) { return t.sign > 0 ? Flavor::WPlus : Flavor::WMinus; }

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<std::pair<std::string, double>> describe(const TileSpec& t) {
  std::vector<std::pair<std::string, double>> p{{"N", t.N},   {"N1", t.N1}, {"N2", t.N2},
                                                {"L", t.L},   {"L1", t.L1}, {"L2", t.L2},
                                                {"sign", static_cast<double>(t.sign)}};
  if (t.A) p.push_back({"A", *t.A});
  if (t.j1) p.push_back({"j1", *t.j1});
  if (t.j2) p.push_back({"j2", *t.j2});
  if (t.cube_side) {
    p.push_back({"d", *t.cube_side});
    p.push_back({"cube_x", t.cube_center[0]});
    p.push_back({"cube_y", t.cube_center[1]});
  }
  return p;
}

double slope_if_possible(const std::vector<std::pair<double, double>>& pts) {
  std::set<double> scales;
  for (const auto& [x, y] : pts) {
    if (!(y > 0.0)) return nan();
    scales.insert(x);
  }
  if (scales.size() < 3) return nan();
  return fit_exponent(pts).slope;
}

BandFieldSpec schrodinger(double N, double L, std::optional<int> A, std::optional<int> j) {
  BandFieldSpec s;
  s.flavor = Flavor::S;
  s.N = N;
  s.L = L;
  if (A) {
    s.A = *A;
    s.j = *j;
  }
  return s;
}

}  // namespace

void validate_bilinear(const TileSpec& t, BilinearCase c) {
  require_scales(t);
  if (c == BilinearCase::WaveSchCube) {
    require(t.cube_side.has_value(), "cube side d is given");
    require(*t.cube_side >= 1.0, "d >= 1");
  }
}

void validate_regime(const TileSpec& t, Regime r) {
  require_scales(t);
  switch (r) {
    case Regime::TransLowMod:
      require(t.N >= 64.0, "64 <= N");
      require(lesssim(t.N, t.N1), "N <~ N1");
      require(sim(t.N1, t.N2), "N1 ~ N2");
      for (double L : {t.L, t.L1, t.L2}) require(lesssim(L, t.N1 * t.N1), "L, L1, L2 <~ N1^2");
      require_angles(t);
      require(*t.A >= 64, "64 <= A");
      require(ll(*t.A, t.N1), "A << N1");
      require(std::abs(*t.j1 - *t.j2) >= 16 && std::abs(*t.j1 - *t.j2) <= 32, "16 <= |j1 - j2| <= 32");
      break;
    case Regime::TransHighMod:
      require(t.N >= 64.0, "64 <= N");
      require(lesssim(t.N, t.N1), "N <~ N1");
      require(sim(t.N1, t.N2), "N1 ~ N2");
      require_angles(t);
      require(*t.A >= 64, "64 <= A");
      require(*t.A <= t.N1, "A <= N1");
      require(std::abs(*t.j1 - *t.j2) >= 16 && std::abs(*t.j1 - *t.j2) <= 32, "16 <= |j1 - j2| <= 32");
      break;
    case Regime::ParallelHH:
      require(ll(1.0, t.N), "1 << N");
      require(lesssim(t.N, t.N1), "N <~ N1");
      require(sim(t.N1, t.N2), "N1 ~ N2");
      require_angles(t);
      require(sim(*t.A, t.N1), "A ~ N1");
      require(std::abs(*t.j1 - *t.j2) <= 16, "|j1 - j2| <= 16");
      break;
    case Regime::HighLow:
      require(ll(t.N1, t.N2) || ll(t.N2, t.N1), "N1 << N2 or N2 << N1");
      require(!t.A.has_value(), "no angular localization");
      break;
    case Regime::SmallWave:
      require(lesssim(t.N, 1.0), "N <~ 1");
      require(!t.A.has_value(), "no angular localization");
      break;
  }
}

double bilinear_rhs(const TileSpec& t, BilinearCase c) {
  switch (c) {
    case BilinearCase::SchSch: return std::sqrt(t.N1 / t.N2 * t.L1 * t.L2);
    case BilinearCase::WaveSchCube: return std::sqrt(std::min(*t.cube_side, t.N1) / t.N1 * t.L * t.L1);
    case BilinearCase::WaveSchAnnulus: return std::sqrt(std::min(t.N, t.N1) / t.N1 * t.L * t.L1);
  }
  return nan();
}

double regime_rhs(const TileSpec& t, Regime r) {
  const double LLL = t.L * t.L1 * t.L2;
  switch (r) {
    case Regime::TransLowMod: return std::sqrt(*t.A / t.N1 * LLL / t.N1);
    case Regime::TransHighMod:
      return std::sqrt(LLL / t.N / std::max({t.L, t.L1, t.L2}) * t.N1 / *t.A);
    case Regime::ParallelHH: return std::pow(LLL, 5.0 / 12.0) / std::sqrt(t.N) * std::pow(t.N / t.N1, 0.25);
    case Regime::HighLow:
      return std::pow(LLL, 5.0 / 12.0) / std::sqrt(t.N) * std::pow(std::min(t.N1 / t.N2, t.N2 / t.N1), 1.0 / 6.0);
    case Regime::SmallWave: return std::cbrt(LLL);
  }
  return nan();
}

std::array<BandFieldSpec, 2> bilinear_fields(const TileSpec& t, BilinearCase c, std::uint64_t seed) {
  std::array<BandFieldSpec, 2> s;
  if (c == BilinearCase::SchSch) {
    s = {schrodinger(t.N1, t.L1, {}, {}), schrodinger(t.N2, t.L2, {}, {})};
  } else {
    BandFieldSpec u;
    u.flavor = wave_flavor(t);
    u.N = t.N;
    u.L = t.L;
    if (c == BilinearCase::WaveSchCube) {
      u.geometry = BandGeometry::Cube;
      u.cube_side = *t.cube_side;
      u.cube_center = t.cube_center;
    }
    s = {u, schrodinger(t.N1, t.L1, {}, {})};
  }
  Rng rng(seed);
  for (auto& x : s) x = randomize(x, rng, seed == 0);
  return s;
}

std::array<BandFieldSpec, 3> regime_fields(const TileSpec& t, Regime r, std::uint64_t seed) {
  BandFieldSpec f;
  f.flavor = wave_flavor(t);
  f.N = t.N;
  f.L = t.L;
  const bool angles = r == Regime::TransLowMod || r == Regime::TransHighMod || r == Regime::ParallelHH;
  std::array<BandFieldSpec, 3> s{f, schrodinger(t.N1, t.L1, angles ? t.A : std::nullopt, t.j1),
                                 schrodinger(t.N2, t.L2, angles ? t.A : std::nullopt, t.j2)};
  Rng rng(seed);
  for (auto& x : s) x = randomize(x, rng, seed == 0);
  return s;
}

SweepResult check_bilinear_strichartz(const TileSpec& t, BilinearCase c, const std::vector<std::uint64_t>& seeds,
                                      int level) {
  validate_bilinear(t, c);
  const double rhs = bilinear_rhs(t, c);
  const double scale = c == BilinearCase::WaveSchCube ? *t.cube_side : t.N1;
  SweepResult out;
  out.parameters = describe(t);
  for (auto seed : seeds) {
    const auto s = bilinear_fields(t, c, seed);
    const double ratio = band_product_norm(BandField(s[0]), BandField(s[1]), level) / rhs;
    out.measured.push_back({scale, ratio});
    out.maxRatio = std::max(out.maxRatio, ratio);
  }
  out.fittedSlope = slope_if_possible(out.measured);
  return out;
}

SweepResult check_regime(const TileSpec& t, Regime r, const std::vector<std::uint64_t>& seeds, int level) {
  validate_regime(t, r);
  const double rhs = regime_rhs(t, r);
  SweepResult out;
  out.parameters = describe(t);
  for (auto seed : seeds) {
    const auto s = regime_fields(t, r, seed);
    const double ratio = std::fabs(band_trilinear(BandField(s[0]), BandField(s[1]), BandField(s[2]), level)) / rhs;
    out.measured.push_back({t.N1, ratio});
    out.maxRatio = std::max(out.maxRatio, ratio);
  }
  out.fittedSlope = slope_if_possible(out.measured);
  return out;
}

namespace {

struct Bump {
  double x, y, tau;
  cplx amp;
};

// Sum of Gaussian bumps in (xi, tau); widths are in frequency units so the
// field is the same function on every lattice resolution.
SpaceTimeField bump_field(const SpaceTimeGrid& g, const std::vector<Bump>& bumps, double sx, double st) {
  SpaceTimeField w(g);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2)
      for (int it = 0; it < g.n_t; ++it) {
        cplx acc = 0.0;
        for (const auto& b : bumps) {
          const double dx = g.spatial.xi(i1) - b.x, dy = g.spatial.xi(i2) - b.y, dt = g.tau(it) - b.tau;
          acc += b.amp * std::exp(-0.5 * (dx * dx + dy * dy) / (sx * sx) - 0.5 * dt * dt / (st * st));
        }
        w.at(i1, i2, it) = acc;
      }
  return w;
}

constexpr double kXiMax = 8.0;
constexpr double kTauMax = 24.0;

}  // namespace

SweepResult check_trilinear_full(const std::vector<std::uint64_t>& seeds, const TrilinearGrid& grid, bool conjugate) {
  if (grid.n < 8 || grid.n_t < 8 || grid.n % 2 || grid.n_t % 2)
    throw std::invalid_argument("check_trilinear_full: grid sizes must be even and >= 8");
  const SpaceTimeGrid g(FrequencyGrid(grid.n / (2.0 * kXiMax), grid.n), 2.0 * kPi * grid.n_t / (2.0 * kTauMax),
                        grid.n_t);
  const NormSpec ns(Flavor::S, 0.0, 5.0 / 12.0, 1.0);
  const NormSpec nw(Flavor::WPlus, -0.5, 5.0 / 12.0, 1.0);
  SweepResult out;
  out.parameters = {{"n", static_cast<double>(grid.n)},
                    {"n_t", static_cast<double>(grid.n_t)},
                    {"conjugate", conjugate ? 1.0 : 0.0}};
  for (auto seed : seeds) {
    Rng rng(seed);
    auto draw_schrodinger = [&](std::vector<Bump>& bumps) {
      for (int k = 0; k < 3; ++k) {
        const double r = rng.uniform(0.0, 2.5), th = rng.uniform(-kPi, kPi);
        const double x = r * std::cos(th), y = r * std::sin(th);
        bumps.push_back({x, y, -(x * x + y * y) + rng.uniform(-4.0, 4.0), cplx(rng.normal(), rng.normal())});
      }
    };
    std::vector<Bump> b1, b2, bv;
    draw_schrodinger(b1);
    draw_schrodinger(b2);
    // wave bumps where u1 and u2 interact, with a random offset
    for (int k = 0; k < 3; ++k) {
      const auto& p = b1[static_cast<int>(rng.uniform() * 3.0) % 3];
      const auto& q = b2[static_cast<int>(rng.uniform() * 3.0) % 3];
      bv.push_back({p.x - q.x + rng.uniform(-0.5, 0.5), p.y - q.y + rng.uniform(-0.5, 0.5),
                    p.tau - q.tau + rng.uniform(-2.0, 2.0), cplx(rng.normal(), rng.normal())});
    }
    const auto u1 = bump_field(g, b1, 0.75, 2.0);
    const auto u2 = bump_field(g, b2, 0.75, 2.0);
    const auto v = bump_field(g, bv, 1.0, 2.0);
    double ratio;
    if (!conjugate) {
      ratio = std::abs(trilinear_I(v, u1, u2)) /
              (bourgain_norm(u1, ns) * bourgain_norm(u2, ns) * bourgain_norm(v, nw));
    } else {
      // v is the transform of a conjugated wave: its conjugate lies in X^{W+}
      const auto vbar = zlab::conjugate(v);
      ratio = std::abs(trilinear_I(v, u1, u2)) /
              (bourgain_norm(u1, ns) * bourgain_norm(u2, ns) * bourgain_norm(vbar, nw));
    }
    out.measured.push_back({static_cast<double>(grid.n), ratio});
    out.maxRatio = std::max(out.maxRatio, ratio);
  }
  out.fittedSlope = nan();
  return out;
}

std::vector<std::uint64_t> seed_list(std::uint64_t first, int count) {
  std::vector<std::uint64_t> s(count);
  for (int i = 0; i < count; ++i) s[i] = first + static_cast<std::uint64_t>(i);
  return s;
}

}  // namespace zlab
