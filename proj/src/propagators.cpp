#include "zlab/propagators.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/norms.hpp"
#include "zlab/solver_types.hpp"

namespace zlab {

namespace {

template <class Symbol>
SpatialField apply_phase(const SpatialField& phi, double t, Symbol sym) {
  const auto& g = phi.grid;
  SpatialField out(g);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      const double a = -t * sym(r2);
      out.at(i1, i2) = phi.at(i1, i2) * cplx(std::cos(a), std::sin(a));
    }
  return out;
}

template <class Symbol>
SpatialField duhamel(const FieldSampler& f, double t, double dt_quad, Symbol sym) {
  if (!(dt_quad > 0.0)) throw std::invalid_argument("duhamel: dt_quad must be positive");
  const double ratio = t / dt_quad;
  const long long m = std::llround(ratio);
  if (m < 0 || std::fabs(ratio - static_cast<double>(m)) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("duhamel: dt_quad must divide t");
  SpatialField first = f(0.0);
  SpatialField acc(first.grid);
  if (m == 0) return acc;
  // integrand in the interaction picture: e^{-i (t-s) sym} f(s)
  auto term = [&](long long k) {
    const double s = k * dt_quad;
    return apply_phase(k == 0 ? first : f(s), t - s, sym);
  };
  auto add = [&](const SpatialField& x, double w) {
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * x.values[i];
  };
  const double h = dt_quad;
  if (m == 1) {
    // one panel: Simpson with an extra midpoint sample
    add(term(0), h / 6);
    add(apply_phase(f(h / 2), t - h / 2, sym), 4 * h / 6);
    add(term(1), h / 6);
    return acc;
  }
  long long simpson_end = m;
  if (m % 2 == 1) {
    // Simpson 3/8 on the last three panels
    simpson_end = m - 3;
    const double w = 3.0 * h / 8.0;
    add(term(m - 3), w);
    add(term(m - 2), 3 * w);
    add(term(m - 1), 3 * w);
    add(term(m), w);
  }
  for (long long k = 0; k <= simpson_end && simpson_end > 0; ++k) {
    const double w = (k == 0 || k == simpson_end) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    add(term(k), w * h / 3.0);
  }
  return acc;
}

}  // namespace

SpatialField free_schrodinger(const SpatialField& phi, double t) {
  return apply_phase(phi, t, [](double r2) { return r2; });
}

SpatialField free_halfwave(const SpatialField& phi, double t, double lambda) {
  return apply_phase(phi, t, [lambda](double r2) { return wave_symbol(lambda, r2); });
}

SpatialField duhamel_S(const FieldSampler& f, double t, double dt_quad) {
  return duhamel(f, t, dt_quad, [](double r2) { return r2; });
}

SpatialField duhamel_W(const FieldSampler& f, double t, double dt_quad, double lambda) {
  return duhamel(f, t, dt_quad, [lambda](double r2) { return wave_symbol(lambda, r2); });
}

ReducedData reduce_data(const SpatialField& u0, const SpatialField& n0, const SpatialField& n1,
                        double lambda) {
  validate_triple({u0, n0, n1});
  const auto& g = u0.grid;
  ReducedData d{u0, SpatialField(g)};
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      d.v.at(i1, i2) = n0.at(i1, i2) + cplx(0.0, 1.0) * n1.at(i1, i2) / wave_symbol(lambda, r2);
    }
  return d;
}

WaveData reconstruct(const SpatialField& v, double lambda) {
  WaveData w;
  reconstruct_wave(v, lambda, w.n, w.dtn);
  return w;
}

}  // namespace zlab
