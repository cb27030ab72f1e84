#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "zlab/cutoff.hpp"
#include "zlab/grid.hpp"
#include "zlab/projectors.hpp"
#include "zlab/quadrature.hpp"

using namespace zlab;
using Catch::Approx;

namespace {

SpatialField random_field(const FrequencyGrid& g, std::uint64_t seed) {
  Rng rng(seed);
  SpatialField u(g);
  for (auto& z : u.values) z = {rng.normal(), rng.normal()};
  return u;
}

// Random space-time field vanishing on the Nyquist index planes, so that
// conjugation (index reflection) stays on the lattice.
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

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("psi takes its plateau, support and midpoint values") {
  CHECK(psi(0.5) == 1.0);
  CHECK(psi(-1.0) == 1.0);
  CHECK(psi(3.0) == 0.0);
  CHECK(psi(2.0) == 0.0);
  CHECK(psi(1.5) == Approx(0.5).margin(1e-15));
  for (double r = 0.0; r < 3.0; r += 0.01) {
    CHECK(psi(r) == psi(-r));
    CHECK(psi(r) >= 0.0);
    CHECK(psi(r) <= 1.0);
  }
  // monotone on the transition
  for (double r = 1.0; r < 2.0; r += 0.001) CHECK(psi(r + 0.001) <= psi(r));
}

TEST_CASE("psi_N examples and support") {
  CHECK(psi_N(2, 0.0) == 0.0);
  CHECK(psi_N(4, 4.0) == 1.0);
  CHECK(psi_N(1, 0.3) == 1.0);
  for (double N : {2.0, 8.0, 64.0})
    for (double r = 0.0; r < 3 * N; r += N / 97.0)
      if (r <= N / 2 || r >= 2 * N) CHECK(psi_N(N, r) == 0.0);
}

TEST_CASE("dyadic pieces sum to one up to the top band") {
  Rng rng(1);
  const int nmax = 12;
  double worst = 0.0;
  for (int s = 0; s < 100000; ++s) {
    const double r = rng.uniform(-std::ldexp(1.0, nmax), std::ldexp(1.0, nmax));
    double acc = 0.0;
    for (int n = 0; n <= nmax; ++n) acc += psi_N(std::ldexp(1.0, n), r);
    worst = std::max(worst, std::fabs(acc - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("angular cutoffs form a partition of unity") {
  for (int A : {4, 16, 64}) {
    double worst = 0.0;
    for (int m = 0; m < 10000; ++m) {
      const double th = -kPi + 2.0 * kPi * (m + 1) / 10000.0;
      double acc = 0.0;
      for (int j = 0; j < A; ++j) acc += beta_A_j(A, j, th);
      worst = std::max(worst, std::fabs(acc - 1.0));
    }
    CHECK(worst <= 1e-12);
  }
  CHECK(beta_A_j(64, 0, 0.0) > 0.0);
  CHECK(beta_A_j(64, 32, 0.0) == 0.0);
  CHECK_THROWS(beta_A_j(64, 64, 0.0));
  // support check: beta^A_j vanishes off Theta^A_j
  for (int m = 0; m < 2000; ++m) {
    const double th = -kPi + 2.0 * kPi * (m + 0.5) / 2000.0;
    for (int j = 0; j < 16; ++j)
      if (!in_theta_support(16, j, th)) CHECK(beta_A_j(16, j, th) == 0.0);
  }
  // the construction is antipodally symmetric
  CHECK(beta_A_j(16, 3, 0.4) == Approx(beta_A_j(16, 3, 0.4 - kPi)).margin(1e-14));
}

TEST_CASE("project_dyadic reconstructs, localizes and obeys frame bounds") {
  const FrequencyGrid g(2.0, 32);
  const auto bands = dyadic_up_to(top_dyadic_band(g));
  for (int seed = 0; seed < 100; ++seed) {
    const SpatialField u = random_field(g, 100 + seed);
    SpatialField sum(g);
    double frame = 0.0;
    for (double N : bands) {
      const SpatialField p = project_dyadic(u, N);
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
          const double r = std::hypot(g.xi(i1), g.xi(i2));
          if (N >= 2 && (r <= N / 2 || r >= 2 * N)) REQUIRE(p.at(i1, i2) == cplx(0.0));
        }
      sum = sum + p;
      frame += std::pow(l2_norm(p), 2);
    }
    CHECK(max_diff(sum.values, u.values) <= 1e-12 * max_abs(u.values));
    const double m = std::pow(l2_norm(u), 2);
    CHECK(frame <= m * (1 + 1e-14));
    CHECK(frame >= 0.5 * m);
  }
  CHECK_THROWS(project_dyadic(random_field(g, 1), 2 * top_dyadic_band(g)));
}

TEST_CASE("project_dyadic examples") {
  const FrequencyGrid g(1.0, 16);
  SpatialField c(g);
  c.at(0, 0) = 3.0;
  CHECK(project_dyadic(c, 1).values == c.values);
  SpatialField m(g);
  m.at(4, 0) = {1.0, -2.0};  // |xi| = 4
  CHECK(project_dyadic(m, 4).values == m.values);
}

TEST_CASE("project_modulation examples and conjugation identity") {
  // dxi = 1 and dtau = 1 put tau = -|xi|^2 on lattice points.
  const SpaceTimeGrid g(FrequencyGrid(1.0, 8), 2 * kPi, 64);
  SpaceTimeField w(g);
  for (int i1 = 0; i1 < 8; ++i1)
    for (int i2 = 0; i2 < 8; ++i2) {
      const int r2 = freq_index(i1, 8) * freq_index(i1, 8) + freq_index(i2, 8) * freq_index(i2, 8);
      w.at(i1, i2, slot_of(-r2, 64)) = {1.0 + i1, 0.5 * i2};
    }
  CHECK(project_modulation(w, 1, Flavor::S).values == w.values);

  const SpaceTimeGrid h(FrequencyGrid(1.5, 16), 3.0, 32);
  for (int seed = 0; seed < 5; ++seed) {
    const SpaceTimeField x = random_st_field(h, seed);
    for (Flavor f : {Flavor::S, Flavor::WPlus, Flavor::WMinus, Flavor::WFull}) {
      SpaceTimeField sum(h);
      for (double L : dyadic_up_to(top_modulation_band(h, f))) sum = sum + project_modulation(x, L, f);
      CHECK(max_diff(sum.values, x.values) <= 1e-12 * max_abs(x.values));
    }
    for (double L : {1.0, 4.0, 16.0}) {
      const auto lhs = project_modulation(conjugate(x), L, Flavor::WMinus);
      const auto rhs = conjugate(project_modulation(x, L, Flavor::WPlus));
      CHECK(max_diff(lhs.values, rhs.values) <= 1e-14 * max_abs(x.values));
    }
  }
  CHECK_THROWS(parse_flavor("X"));
}

TEST_CASE("project_angular partitions fields") {
  const FrequencyGrid g(1.0, 32);
  for (int A : {4, 16}) {
    const SpatialField u = random_field(g, 7 + A);
    SpatialField sum(g);
    for (int j = 0; j < A; ++j) {
      const SpatialField q = project_angular(u, AngularSector(A, j));
      sum = sum + q;
      CHECK(l2_norm(project_angular(q, AngularSector(A, j))) <= l2_norm(q));
    }
    CHECK(max_diff(sum.values, u.values) <= 1e-12 * max_abs(u.values));
  }
  // A field on the positive xi_1 axis: sector 0 keeps beta_0(0) = 1/3 of it,
  // the neighbouring sectors 1 and A-1 carry the rest.
  SpatialField axis(g);
  for (int k = 1; k < 16; ++k) axis.at(k, 0) = {double(k), 1.0};
  const int A = 16;
  const auto q0 = project_angular(axis, AngularSector(A, 0));
  const auto q1 = project_angular(axis, AngularSector(A, 1));
  const auto qm = project_angular(axis, AngularSector(A, A - 1));
  CHECK(max_diff((q0 + q1 + qm).values, axis.values) <= 1e-15 * max_abs(axis.values));
  CHECK(std::abs(q0.at(3, 0) - axis.at(3, 0) / 3.0) <= 1e-15 * std::abs(axis.at(3, 0)));
  for (int j = 2; j < A - 1; ++j) CHECK(l2_norm(project_angular(axis, AngularSector(A, j))) == 0.0);
  // zero frequency goes to sector 0
  SpatialField z(g);
  z.at(0, 0) = 1.0;
  CHECK(project_angular(z, AngularSector(A, 0)).values == z.values);
  CHECK(l2_norm(project_angular(z, AngularSector(A, 5))) == 0.0);
}

TEST_CASE("whitney tiles cover every pair of directions a bounded number of times") {
  CHECK_THROWS(whitney_tiles(32));
  const auto tiles = whitney_tiles(64);
  bool par = false, tra = false;
  for (const auto& t : tiles) {
    CHECK(t.A == 64);
    par |= t.parallel;
    tra |= !t.parallel;
  }
  CHECK(par);
  CHECK(tra);

  for (int M : {64, 256}) {
    const auto ts = whitney_tiles(M);
    std::set<std::tuple<int, int, int, bool>> lookup;
    for (const auto& t : ts) lookup.insert({t.A, t.j1, t.j2, t.parallel});
    int worst = 0, uncovered = 0;
    for (int a = 0; a < 360; ++a)
      for (int b = 0; b < 360; ++b) {
        const double t1 = a * kPi / 180.0, t2 = b * kPi / 180.0;
        int count = 0;
        for (int A = 64; A <= M; A *= 2) {
          const int j1 = sector_of(A, t1), j2 = sector_of(A, t2);
          if (A == M && lookup.count({A, j1, j2, true})) ++count;
          if (lookup.count({A, j1, j2, false})) ++count;
        }
        if (count == 0) ++uncovered;
        worst = std::max(worst, count);
      }
    CHECK(uncovered == 0);
    CHECK(worst <= 8);
    UNSCOPED_INFO("M=" << M << " measured tile multiplicity " << worst);
  }
}
