#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "zlab/besov.hpp"
#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"
#include "zlab/norms.hpp"
#include "zlab/quadrature.hpp"

using namespace zlab;
using Catch::Approx;

static constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

SpaceTimeField random_st_field(const SpaceTimeGrid& g, std::uint64_t seed) {
  Rng rng(seed);
  SpaceTimeField w(g);
  const int n = g.spatial.n, nt = g.n_t;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int it = 0; it < nt; ++it) {
        const cplx z{rng.normal(), rng.normal()};
        if (i1 == n / 2 || i2 == n / 2 || it == nt / 2) continue;
        w.at(i1, i2, it) = z;
      }
  return w;
}

// Sum of a few Gaussian bumps in (xi, tau), sampled on the lattice; the same
// continuum function is used at every resolution.
struct SmoothSpec {
  std::vector<std::array<double, 4>> bumps;  // xi1, xi2, tau, width
  std::vector<cplx> coeff;
};

SmoothSpec random_smooth(std::uint64_t seed) {
  Rng rng(seed);
  SmoothSpec s;
  for (int m = 0; m < 4; ++m) {
    s.bumps.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-6, 6), rng.uniform(0.6, 1.2)});
    s.coeff.push_back({rng.normal(), rng.normal()});
  }
  return s;
}

SpaceTimeField sample(const SmoothSpec& s, const SpaceTimeGrid& g) {
  SpaceTimeField w(g);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2)
      for (int it = 0; it < g.n_t; ++it) {
        cplx acc = 0.0;
        for (std::size_t m = 0; m < s.bumps.size(); ++m) {
          const auto& b = s.bumps[m];
          const double d2 = std::pow(g.spatial.xi(i1) - b[0], 2) + std::pow(g.spatial.xi(i2) - b[1], 2) +
                            std::pow(g.tau(it) - b[2], 2);
          acc += s.coeff[m] * std::exp(-d2 / (2 * b[3] * b[3]));
        }
        w.at(i1, i2, it) = acc;
      }
  return w;
}

TimeSeries1D random_bandlimited(std::uint64_t seed, double band) {
  const int n = 4096;
  const double dt = 1.0 / 32.0;
  std::vector<cplx> spec(n);
  Rng rng(seed);
  const double dtau = 2 * kPi / (n * dt);
  for (int k = 0; k < n; ++k)
    if (std::fabs(freq_index(k, n) * dtau) <= band) spec[k] = {rng.normal(), rng.normal()};
  Fft fft({n});
  fft.backward(spec.data());
  return TimeSeries1D(dt, spec);
}

}  // namespace

TEST_CASE("sobolev norm examples") {
  const FrequencyGrid g(4.0, 128);
  CHECK(sobolev_norm(SpatialField(g), 1.0) == 0.0);
  SpatialField m(g);
  m.at(5, 3) = 1.0 / g.dxi();
  CHECK(sobolev_norm(m, 0.0) == Approx(1.0).epsilon(1e-15));
  // exp(-|x|^2/2) has transform exp(-|xi|^2/2), so ||u||_{H^1}^2 = 2 pi.
  std::vector<cplx> phys(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) phys[g.index(j1, j2)] = std::exp(-(g.x(j1) * g.x(j1) + g.x(j2) * g.x(j2)) / 2);
  const SpatialField u = from_physical(g, phys);
  CHECK(std::fabs(sobolev_norm(u, 1.0) - std::sqrt(2 * kPi)) <= 1e-6 * std::sqrt(2 * kPi));
  CHECK(std::abs(u.at(0, 0) - 1.0) <= 1e-10);
  // homogeneity
  CHECK(sobolev_norm(cplx(-2.5, 1.0) * u, 0.5) == Approx(std::abs(cplx(-2.5, 1.0)) * sobolev_norm(u, 0.5)).epsilon(1e-12));
}

TEST_CASE("bourgain norm on a single block") {
  // dxi = dtau = 1; modes with |xi| = 4 and tau + |xi|^2 = 8 sit where psi_4 = psi_8 = 1 exactly
  const SpaceTimeGrid g(FrequencyGrid(1.0, 16), 2 * kPi, 64);
  SpaceTimeField w(g);
  w.at(4, 0, slot_of(-8, 64)) = {1.0, 2.0};
  w.at(0, slot_of(-4, 16), slot_of(-8, 64)) = {-0.5, 0.0};
  const double mass = l2_norm(w);
  for (double p : {1.0, 2.0, kInf})
    CHECK(bourgain_norm(w, NormSpec(Flavor::S, 0.7, 0.4, p)) ==
          Approx(std::pow(4.0, 0.7) * std::pow(8.0, 0.4) * mass).epsilon(1e-13));
  CHECK_THROWS(NormSpec(Flavor::S, 0, 0, 3.0));
}

TEST_CASE("bourgain norm nesting, monotonicity, homogeneity, triangle inequality") {
  const SpaceTimeGrid g(FrequencyGrid(1.5, 16), 3.0, 32);
  for (int seed = 0; seed < 6; ++seed) {
    const auto w = random_st_field(g, seed);
    const auto v = random_st_field(g, 100 + seed);
    for (Flavor f : {Flavor::S, Flavor::WPlus, Flavor::WMinus, Flavor::WFull}) {
      const auto t = block_table(w, f);
      const double pinf = bourgain_norm(t, 0.3, 0.4, INFINITY);
      const double p2 = bourgain_norm(t, 0.3, 0.4, 2.0);
      const double p1 = bourgain_norm(t, 0.3, 0.4, 1.0);
      CHECK(pinf <= p2);
      CHECK(p2 <= p1);
      for (double p : {1.0, 2.0, kInf}) {
        double prev = 0.0;
        for (double b = -0.5; b <= 1.0; b += 0.125) {
          const double val = bourgain_norm(t, -0.5, b, p);
          CHECK(val >= prev);
          prev = val;
        }
        const NormSpec spec(f, 0.2, 5.0 / 12.0, p);
        const double nw = bourgain_norm(w, spec), nv = bourgain_norm(v, spec);
        CHECK(bourgain_norm(cplx(0.0, -3.0) * w, spec) == Approx(3.0 * nw).epsilon(1e-12));
        CHECK(bourgain_norm(w + v, spec) <= nw + nv + 1e-10 * (nw + nv));
      }
    }
    for (double p : {1.0, 2.0, kInf}) {
      const double a = bourgain_norm(conjugate(w), NormSpec(Flavor::WMinus, -0.5, 5.0 / 12.0, p));
      const double b = bourgain_norm(w, NormSpec(Flavor::WPlus, -0.5, 5.0 / 12.0, p));
      CHECK(std::fabs(a - b) <= 1e-10 * b);
    }
  }
}

TEST_CASE("sup-in-time Sobolev norm is controlled by the X_{s,1/2,1} norm uniformly in resolution") {
  std::vector<double> consts;
  for (int level = 0; level < 2; ++level) {
    const int f = 1 << level;
    // same frequency box [-8, 8)^2 x [-16, 16), spacing halved at level 1
    const SpaceTimeGrid g(FrequencyGrid(1.0 * f, 16 * f), 4.0 * kPi * f, 64 * f);
    double worst = 0.0;
    for (int seed = 0; seed < 8; ++seed) {
      const auto w = sample(random_smooth(seed), g);
      for (double s : {0.0, 1.0}) {
        const double lhs = sup_time_sobolev(w, s);
        const double rhs = bourgain_norm(w, NormSpec(Flavor::S, s, 0.5, 1.0));
        worst = std::max(worst, lhs / rhs);
      }
    }
    consts.push_back(worst);
  }
  UNSCOPED_INFO("C_emb per level " << consts[0] << " " << consts[1]);
  CHECK(consts[0] > 0.0);
  CHECK(consts[1] / consts[0] <= 2.0);
  CHECK(consts[0] / consts[1] <= 2.0);
}

TEST_CASE("product norm examples") {
  const FrequencyGrid g(1.0, 16);
  DataTriple zero{SpatialField(g), SpatialField(g), SpatialField(g)};
  CHECK(product_norm(zero, 1, 0).full == 0.0);
  DataTriple d = zero;
  d.u0.at(2, 3) = 1.0 / g.dxi();
  CHECK(product_norm(d, 0, 0).full == Approx(1.0).epsilon(1e-15));
  CHECK(product_norm(d, 0, 0).mass == Approx(1.0).epsilon(1e-15));
  // unit components in their own norms: real n0, n1 built from a +-xi pair
  DataTriple e = d;
  const double w0 = std::pow(1 + 1.0, 0.0);
  e.n0.at(1, 0) = e.n0.at(15, 0) = 1.0 / std::sqrt(2.0 * w0);
  const double w1 = std::pow(1 + 4.0, -1.0);
  e.n1.at(2, 0) = e.n1.at(14, 0) = 1.0 / std::sqrt(2.0 * w1);
  CHECK(product_norm(e, 0, 0).full == Approx(std::sqrt(3.0)).epsilon(1e-14));
  DataTriple bad = e;
  bad.n0.at(1, 0) = {0.0, 1.0};
  CHECK_THROWS(product_norm(bad, 0, 0));
}

TEST_CASE("besov norm examples") {
  const int n = 1024;
  const double dt = 0.05;
  CHECK(besov_norm_1d(TimeSeries1D(dt, std::vector<cplx>(n)), 0.5, 1.0) == 0.0);
  // a lattice mode with |tau| <= 1 lives in the L = 1 block only
  const double dtau = 2 * kPi / (n * dt);
  std::vector<cplx> v(n);
  const TimeSeries1D proto(dt, std::vector<cplx>(n));
  for (int j = 0; j < n; ++j) v[j] = std::exp(cplx(0.0, 5 * dtau * proto.t(j)));
  const TimeSeries1D g(dt, v);
  REQUIRE(5 * dtau <= 1.0);
  CHECK(besov_norm_1d(g, 0.7, 1.0) == Approx(l2_norm(g)).epsilon(1e-12));
  for (int seed = 0; seed < 10; ++seed) {
    const auto r = random_bandlimited(seed, 40.0);
    CHECK(besov_norm_1d(r, 0.3, INFINITY) <= besov_norm_1d(r, 0.3, 1.0));
  }
}

TEST_CASE("norm equivalence lemma: constants stable across random data") {
  CHECK(norm_equiv_check(TimeSeries1D(0.01, std::vector<cplx>(512)), 1.0, 0.5).lhs == 0.0);
  double lo = 1e300, hi = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto g = random_bandlimited(seed, 8.0);
    const auto r = norm_equiv_check(g, 1.0, 0.5);
    const double ratio = r.lhs / r.rhs;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  UNSCOPED_INFO("norm equivalence ratio range " << lo << " .. " << hi);
  CHECK(lo >= 0.1);
  CHECK(hi <= 10.0);
  CHECK(hi / lo <= 2.0);
  // explicit factor T^{-b}: halving T multiplies it by 2^b
  const auto g = random_bandlimited(3, 8.0);
  const double b = 0.4;
  const auto a1 = norm_equiv_check(g, 0.5, b), a2 = norm_equiv_check(g, 0.25, b);
  CHECK((a2.low_term / a2.low_norm) / (a1.low_term / a1.low_norm) == Approx(std::pow(2.0, b)).epsilon(1e-14));
  CHECK_THROWS(norm_equiv_check(g, 2.0, b));
  CHECK_THROWS(norm_equiv_check(g, 0.5, 0.7));
}

TEST_CASE("embedding scaling ratio stays bounded in T") {
  CHECK(besov_scaling_check(TimeSeries1D(0.01, std::vector<cplx>(512)), 1.0, 0.4) == 0.0);
  for (int seed = 0; seed < 5; ++seed) {
    const auto g = random_bandlimited(50 + seed, 6.0);
    for (double b : {5.0 / 12.0, 0.49}) {
      double lo = 1e300, hi = 0.0;
      for (double T : {1.0, 0.5, 0.25, 0.125}) {
        const double r = besov_scaling_check(g, T, b);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      CHECK(hi / lo <= 4.0);
    }
  }
}

TEST_CASE("Duhamel time-integral ratio stays bounded in T") {
  CHECK(besov_duhamel_check(TimeSeries1D(0.01, std::vector<cplx>(512)), 1.0) == 0.0);
  const int n = 8192;
  const double dt = 1.0 / 64.0;
  const TimeSeries1D proto(dt, std::vector<cplx>(n));
  std::vector<cplx> v(n);
  for (int j = 0; j < n; ++j) v[j] = (proto.t(j) >= 0.0 && proto.t(j) <= 1.0) ? 1.0 : 0.0;
  const TimeSeries1D box(dt, v);
  // trapezoid integral oracle: I(1/2) = 1/2
  const auto I = time_integral(box);
  CHECK(std::abs(I.values[n / 2 + 32] - 0.5) <= 1e-12);
  const double r1 = besov_duhamel_check(box, 1.0);
  CHECK(std::isfinite(r1));
  CHECK(r1 > 0.0);
  // For a fixed g the ratio decays like T^{11/12} as T -> 0 (the time integral
  // vanishes linearly at t = 0), so boundedness is asserted as "no growth
  // beyond 4x the T = 1 value" rather than max/min <= 4.
  for (const auto& g : {box, random_bandlimited(7, 6.0)}) {
    const double first = besov_duhamel_check(g, 1.0);
    double hi = 0.0;
    for (double T : {1.0, 0.5, 0.25, 0.125}) hi = std::max(hi, besov_duhamel_check(g, T));
    UNSCOPED_INFO("duhamel ratio at T=1 " << first << ", max " << hi);
    CHECK(hi / first <= 4.0);
    CHECK(besov_duhamel_check(g, 0.125) < first);
  }
}
