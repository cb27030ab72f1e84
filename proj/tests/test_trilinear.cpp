#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "zlab/boxes.hpp"
#include "zlab/counterexamples.hpp"
#include "zlab/fit.hpp"
#include "zlab/localize.hpp"
#include "zlab/quadrature.hpp"
#include "zlab/trilinear.hpp"

using namespace zlab;
using Catch::Approx;

namespace {

SpaceTimeField random_field(const SpaceTimeGrid& g, std::uint64_t seed) {
  Rng rng(seed);
  SpaceTimeField w(g);
  const int n = g.spatial.n, nt = g.n_t;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int it = 0; it < nt; ++it) {
        const cplx z{rng.normal(), rng.normal()};
        // keep the unpaired Nyquist slots empty so reflections stay on the lattice
        if (i1 == n / 2 || i2 == n / 2 || it == nt / 2) continue;
        w.at(i1, i2, it) = z;
      }
  return w;
}

// Direct sum over all lattice pairs; f vanishes off its own index range.
cplx direct_I(const SpaceTimeField& f, const SpaceTimeField& g1, const SpaceTimeField& g2) {
  const auto& g = f.grid;
  const int n = g.spatial.n, nt = g.n_t;
  auto inside = [](int k, int m) { return k >= -m / 2 && k < m / 2; };
  cplx acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      for (int at = 0; at < nt; ++at)
        for (int b1 = 0; b1 < n; ++b1)
          for (int b2 = 0; b2 < n; ++b2)
            for (int bt = 0; bt < nt; ++bt) {
              const int d1 = freq_index(a1, n) - freq_index(b1, n);
              const int d2 = freq_index(a2, n) - freq_index(b2, n);
              const int dt = freq_index(at, nt) - freq_index(bt, nt);
              if (!inside(d1, n) || !inside(d2, n) || !inside(dt, nt)) continue;
              acc += f.at(slot_of(d1, n), slot_of(d2, n), slot_of(dt, nt)) * g1.at(a1, a2, at) *
                     g2.at(b1, b2, bt);
            }
  const double vol = g.cell_volume();
  return acc * vol * vol;
}

}  // namespace

TEST_CASE("trilinear_I matches direct summation on 8^3 lattices", "[trilinear]") {
  const SpaceTimeGrid g(FrequencyGrid(1.5, 8), 2.0, 8);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(1000 + s);
    SpaceTimeField f(g), g1(g), g2(g);
    for (auto* w : {&f, &g1, &g2})
      for (auto& v : w->values) v = cplx(rng.normal(), rng.normal());
    const cplx fast = trilinear_I(f, g1, g2);
    const cplx ref = direct_I(f, g1, g2);
    CHECK(std::abs(fast - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("trilinear_I is trilinear and conjugation symmetric", "[trilinear]") {
  const SpaceTimeGrid g(FrequencyGrid(1.0, 8), 1.0, 8);
  const auto f = random_field(g, 1), g1 = random_field(g, 2), g2 = random_field(g, 3);
  const auto h = random_field(g, 4);
  const cplx I0 = trilinear_I(f, g1, g2);
  const cplx c(0.3, -1.7);
  CHECK(std::abs(trilinear_I(f, g1, SpaceTimeField(g))) == 0.0);
  CHECK(std::abs(trilinear_I(2.0 * f, g1, g2) - 2.0 * I0) <= 1e-12 * std::abs(I0));
  const cplx lin = trilinear_I(f, c * g1 + h, g2);
  const cplx expect = c * I0 + trilinear_I(f, h, g2);
  CHECK(std::abs(lin - expect) <= 1e-12 * std::abs(expect));
  const cplx lin2 = trilinear_I(f + c * h, g1, g2);
  CHECK(std::abs(lin2 - (I0 + c * trilinear_I(h, g1, g2))) <= 1e-12 * std::abs(lin2));
  const cplx Ic = trilinear_I(conjugate(f), conjugate(g1), conjugate(g2));
  CHECK(std::abs(Ic - std::conj(I0)) <= 1e-12 * std::abs(I0));
  CHECK_THROWS(trilinear_I(f, g1, SpaceTimeField(SpaceTimeGrid(FrequencyGrid(1.0, 8), 2.0, 8))));
}

TEST_CASE("dyadic random fields", "[trilinear]") {
  const SpaceTimeGrid g(FrequencyGrid(2.0, 32), 4.0, 32);
  const auto w = make_dyadic_random_field(g, 4, 2, Flavor::S, 7);
  CHECK(l2_norm(w) == Approx(1.0).epsilon(1e-12));
  bool outside_zero = true;
  int inside = 0;
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2)
      for (int it = 0; it < g.n_t; ++it) {
        const double r = std::hypot(g.spatial.xi(i1), g.spatial.xi(i2));
        const double m = g.tau(it) + r * r;
        const bool in_band = r > 2.0 && r < 8.0 && std::fabs(m) > 1.0 && std::fabs(m) < 4.0;
        if (!in_band && w.at(i1, i2, it) != 0.0) outside_zero = false;
        if (in_band && w.at(i1, i2, it) != 0.0) ++inside;
      }
  CHECK(outside_zero);
  CHECK(inside > 0);
  const auto w2 = make_dyadic_random_field(g, 4, 2, Flavor::S, 7);
  CHECK(w.values == w2.values);
  CHECK_FALSE(make_dyadic_random_field(g, 4, 2, Flavor::S, 8).values == w.values);
  CHECK_THROWS(make_dyadic_random_field(g, 64, 1, Flavor::S, 0));
  const auto wp = make_dyadic_random_field(g, 2, 1, Flavor::WPlus, 3);
  CHECK(l2_norm(wp) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_exponent", "[fit]") {
  CHECK(fit_exponent({{2, 4}, {4, 16}, {8, 64}}).slope == Approx(2.0).margin(1e-12));
  CHECK(fit_exponent({{2, 3}, {4, 3}, {8, 3}}).slope == Approx(0.0).margin(1e-12));
  CHECK(fit_exponent({{2, 3}, {4, 3}, {8, 3}}).residual == Approx(0.0).margin(1e-12));
  Rng rng(5);
  std::vector<std::pair<double, double>> pts;
  for (double N = 16; N <= 4096; N *= 2) pts.push_back({N, 2.5 * std::pow(N, 0.75) * (1.0 + 0.01 * rng.normal())});
  CHECK(fit_exponent(pts).slope == Approx(0.75).margin(0.02));
  CHECK_THROWS(fit_exponent({{2, 1}, {4, 1}}));
  CHECK_THROWS(fit_exponent({{2, 1}, {4, 0}, {8, 1}}));
}

TEST_CASE("localize_map", "[localize]") {
  const auto small = localize_map(16, 4, 0.0);
  for (std::size_t i = 0; i < small.k_of_j.size(); ++i)
    CHECK(small.k_of_j[i] == small.j_min + static_cast<long long>(i));
  CHECK(small.containment_violations == 0);
  CHECK(small.worst_offset <= 3);

  for (auto [N1, A] : {std::pair{64.0, 8.0}, {256.0, 8.0}, {256.0, 16.0}}) {
    const auto r = localize_map(N1, A, 0.0);
    CHECK(r.pairs_checked > 0);
    CHECK(r.containment_violations == 0);
    CHECK(r.max_multiplicity <= 100);
  }
  const auto shifted = localize_map(64, 8, 500.0);
  CHECK(shifted.containment_violations == 0);
  CHECK(shifted.max_multiplicity <= 100);
  CHECK_THROWS(localize_map(64, 32, 0.0));
  CHECK_THROWS(localize_map(64, 8, 4096.0));
}

TEST_CASE("box convolutions and trilinear_I_boxes", "[boxes]") {
  CHECK(interval_convolution(0, 2, 0, 2, 0) == Approx(2.0));
  CHECK(interval_convolution(0, 2, 0, 2, 1) == Approx(1.0));
  CHECK(interval_convolution(0, 2, 0, 2, 2.5) == 0.0);
  CHECK(interval_convolution(0, 1, 0, 3, 0.7) == Approx(1.0));

  const CharacteristicField unit({{BoxSpec({0, 0, 0}, {1, 1, 1}), 1.0}});
  CHECK(std::abs(box_convolution(unit, unit, {0, 0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(box_convolution(unit, unit, {0.5, 0, 0}) - 0.5) < 1e-15);
  // 1D: area of {|x|, |y| <= 1/2, |x - y| <= 1/2} is 3/4
  CHECK(std::abs(trilinear_I_boxes(unit, unit, unit) - std::pow(0.75, 3)) < 1e-14);

  const CharacteristicField far({{BoxSpec({10, 0, 0}, {1, 1, 1}), 1.0}});
  CHECK(std::abs(trilinear_I_boxes(far, unit, unit)) == 0.0);
  CHECK(product_norm(unit, far, WeightSpec{}) > 0.0);

  // L2 of chi_box with trivial weight is the volume; product via Plancherel of triangle^3
  WeightSpec flat;
  flat.flavor = Flavor::S;
  const CharacteristicField box({{BoxSpec({1, -2, 3}, {0.5, 2, 4}), cplx(0, 2)}});
  CHECK(weighted_norm(box, flat) == Approx(std::sqrt(4.0 * 4.0)).epsilon(1e-13));
  // ||chi_[-1/2,1/2] * chi_[-1/2,1/2]||^2 = 2/3 in 1D
  CHECK(product_norm(unit, unit, flat) ==
        Approx(std::pow(2.0 * kPi, -1.5) * std::pow(2.0 / 3.0, 1.5)).epsilon(1e-13));
}

TEST_CASE("box norms agree with a fine-lattice Riemann sum", "[boxes]") {
  // first counterexample geometry at N = 16, sigma = -1
  const double N = 16, sigma = -1;
  const BoxSpec E = counter_box(N, sigma, 2 * N + 1, -2 * N - 1);
  const BoxSpec F = counter_box(N, sigma, -N, -N * N);
  WeightSpec w;
  w.flavor = Flavor::S;
  w.k = 0.5;
  w.b = -0.4;
  const double quad =
      product_norm(CharacteristicField({{E, 1.0}}), CharacteristicField({{F, 1.0}}), w);

  const int m = 24;
  std::array<std::vector<double>, 3> z, val;
  for (int d = 0; d < 3; ++d) {
    const double h = E.widths[d] / m;  // both boxes share widths
    std::vector<double> count(2 * m - 1, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) count[i + j] += 1.0;
    for (int l = 0; l < 2 * m - 1; ++l) {
      z[d].push_back(E.lo(d) + F.lo(d) + (l + 1) * h);
      val[d].push_back(count[l] * h);
    }
  }
  double sum = 0.0;
  const double cell = (E.widths[0] / m) * (E.widths[1] / m) * (E.widths[2] / m);
  for (std::size_t a = 0; a < z[0].size(); ++a)
    for (std::size_t b = 0; b < z[1].size(); ++b)
      for (std::size_t c = 0; c < z[2].size(); ++c) {
        const double r2 = z[0][a] * z[0][a] + z[1][b] * z[1][b];
        const double mod = z[2][c] + r2;
        const double weight = std::pow(1 + r2, 0.5) * std::pow(1 + mod * mod, -0.4);
        const double conv = val[0][a] * val[1][b] * val[2][c] / std::pow(2 * kPi, 1.5);
        sum += weight * conv * conv * cell;
      }
  CHECK(quad == Approx(std::sqrt(sum)).epsilon(0.02));
}

namespace {

double slope_c(int lemma, CounterexampleParams p) {
  std::vector<std::pair<double, double>> pts;
  for (double N = 16; N <= 256; N *= 2) {
    p.N = N;
    pts.push_back({N, lemma == 1 ? counterexample_c1(p) : counterexample_c2(p)});
  }
  return fit_exponent(pts).slope;
}

CounterexampleParams params(double sigma, double k, double ell, double b) {
  CounterexampleParams p;
  p.sigma = sigma;
  p.k = k;
  p.ell = ell;
  p.b_prime = p.b1 = p.b2 = b;
  return p;
}

}  // namespace

TEST_CASE("counterexample exponents", "[counterexamples]") {
  // sigma = -1: exponent -l - 1/2 independent of the b's
  CHECK(slope_c(1, params(-1, 0, -0.5, 0.5)) == Approx(0.0).margin(0.15));
  CHECK(slope_c(1, params(-1, 0, -0.5, 0.1)) == Approx(0.0).margin(0.15));
  CHECK(slope_c(1, params(-1, 0, -1.0, 0.5)) >= 0.5 - 0.15);
  const auto half = params(-0.5, 0, -0.5, 5.0 / 12.0);
  CHECK(predicted_exponent_c1(half) == Approx(0.0).margin(1e-15));
  CHECK(slope_c(1, half) == Approx(0.0).margin(0.15));
  CHECK(slope_c(1, params(-0.5, 0, -0.5, 1.0 / 12.0)) == Approx(0.5).margin(0.15));

  CHECK(slope_c(2, params(-1, 0, -0.5, 0.5)) == Approx(0.0).margin(0.15));
  CHECK(slope_c(2, params(-1, 0, 0.0, 0.5)) >= 0.5 - 0.15);
  CHECK(slope_c(2, params(-1, 0.25, 0.0, 0.5)) == Approx(0.0).margin(0.15));
  CHECK(slope_c(2, params(-0.5, 0, -0.5, 5.0 / 12.0)) == Approx(0.0).margin(0.15));

  CHECK_THROWS(counterexample_c1(params(0.0, 0, 0, 0)));
  CHECK_THROWS(counterexample_c2(params(-1.5, 0, 0, 0)));
  auto small = params(-1, 0, 0, 0);
  small.N = 8;
  CHECK_THROWS(counterexample_c1(small));
}

TEST_CASE("Duhamel lower bounds", "[counterexamples]") {
  CHECK(duhamel_lower_bound_1(64, 1.0, 0, -0.5, 0.0).raw == 0.0);
  CHECK(duhamel_lower_bound_2(64, 1.0, 0, -0.5, 0.0).raw == 0.0);
  auto slope = [](int which, double k, double ell) {
    std::vector<std::pair<double, double>> pts;
    double lo = 1e300;
    for (double N = 32; N <= 512; N *= 2) {
      const auto r = which == 1 ? duhamel_lower_bound_1(N, 1.0, k, ell, 0.5)
                                : duhamel_lower_bound_2(N, 1.0, k, ell, 0.5);
      pts.push_back({N, r.raw});
      lo = std::min(lo, r.normalized);
    }
    CHECK(lo > 0.01);
    return fit_exponent(pts).slope;
  };
  CHECK(slope(1, 0, -0.5) == Approx(0.0).margin(0.15));
  CHECK(slope(1, 0, -1.0) >= 0.5 - 0.15);
  CHECK(slope(2, 0, -0.5) == Approx(0.0).margin(0.15));
  CHECK(slope(2, 0, 0.0) >= 0.5 - 0.15);
  CHECK_THROWS(duhamel_lower_bound_1(64, 1.0, 0, 0, 1.5));
  CHECK_THROWS(duhamel_lower_bound_1(64, 1.0, 0, 0, 0.01));
  CHECK_THROWS(duhamel_lower_bound_2(2, 1.0, 0, 0, 0.5));
}
