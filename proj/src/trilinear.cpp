#include "zlab/trilinear.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"
#include "zlab/quadrature.hpp"

namespace zlab {

cplx trilinear_I(const SpaceTimeField& f, const SpaceTimeField& g1, const SpaceTimeField& g2) {
  if (!(f.grid == g1.grid) || !(f.grid == g2.grid))
    throw std::invalid_argument("trilinear_I: fields live on different grids");
  const auto& g = f.grid;
  const int n = g.spatial.n, nt = g.n_t;
  const int m = 2 * n, mt = 2 * nt;
  const std::size_t size = static_cast<std::size_t>(m) * m * mt;
  auto at = [m, mt](int a, int b, int c) {
    return (static_cast<std::size_t>(slot_of(a, m)) * m + slot_of(b, m)) * mt + slot_of(c, mt);
  };

  // c(d) = sum_z g1(z + d) g2(z) = (g1 * h)(d) with h(z) = g2(-z).
  std::vector<cplx> a(size), h(size);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int it = 0; it < nt; ++it) {
        const int k1 = freq_index(i1, n), k2 = freq_index(i2, n), kt = freq_index(it, nt);
        a[at(k1, k2, kt)] = g1.at(i1, i2, it);
        h[at(-k1, -k2, -kt)] = g2.at(i1, i2, it);
      }
  Fft fft({m, m, mt});
  fft.forward(a.data());
  fft.forward(h.data());
  for (std::size_t i = 0; i < size; ++i) a[i] *= h[i];
  fft.backward(a.data());

  cplx acc = 0.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int it = 0; it < nt; ++it) {
        const cplx fv = f.at(i1, i2, it);
        if (fv == 0.0) continue;
        acc += fv * a[at(freq_index(i1, n), freq_index(i2, n), freq_index(it, nt))];
      }
  const double vol = g.cell_volume();
  return acc * (vol * vol / static_cast<double>(size));
}

SpaceTimeField make_dyadic_random_field(const SpaceTimeGrid& g, double N, double L, Flavor f,
                                        std::uint64_t seed) {
  if (!is_dyadic(N) || !is_dyadic(L))
    throw std::invalid_argument("make_dyadic_random_field: N and L must be powers of two");
  Rng rng(seed);
  SpaceTimeField w(g);
  std::size_t count = 0;
  const int n = g.spatial.n;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const double r = std::hypot(g.spatial.xi(i1), g.spatial.xi(i2));
      if (psi_N(N, r) == 0.0) continue;
      for (int it = 0; it < g.n_t; ++it) {
        if (psi_N(L, std::fabs(modulation(f, g.tau(it), r))) == 0.0) continue;
        const double re = rng.normal(), im = rng.normal();
        w.at(i1, i2, it) = cplx(re, im);
        ++count;
      }
    }
  if (count == 0)
    throw std::invalid_argument("make_dyadic_random_field: band N=" + std::to_string(N) +
                                ", L=" + std::to_string(L) + " is empty on this grid");
  const double norm = l2_norm(w);
  for (auto& v : w.values) v /= norm;
  return w;
}

}  // namespace zlab
