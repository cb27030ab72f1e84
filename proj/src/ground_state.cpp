#include "zlab/ground_state.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/fft.hpp"
#include "zlab/norms.hpp"

namespace zlab {

double pde_residual(const SpatialField& Q) {
  const auto& g = Q.grid;
  std::vector<cplx> q = to_physical(Q);
  for (auto& z : q) z = z.real() * z.real() * z.real();
  SpatialField res = from_physical(g, std::move(q));
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      res.at(i1, i2) -= (1.0 + r2) * Q.at(i1, i2);
    }
  return l2_norm(res);
}

GroundState ground_state(const FrequencyGrid& g, double tol, int max_iter) {
  if (g.n * g.dx() / 2.0 < 10.0) throw std::invalid_argument("ground_state: domain half-width must be >= 10");
  if (!(tol > 0.0)) throw std::invalid_argument("ground_state: tol must be positive");
  std::vector<cplx> seed(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) seed[g.index(j1, j2)] = 2.0 * std::exp(-(g.x(j1) * g.x(j1) + g.x(j2) * g.x(j2)) / 2.0);
  SpatialField Q = from_physical(g, seed);
  std::vector<double> sym(g.size());
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) sym[g.index(i1, i2)] = 1.0 + g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);

  GroundState out;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<cplx> q = to_physical(Q);
    for (auto& z : q) z = z.real() * z.real() * z.real();
    const SpatialField Q3 = from_physical(g, std::move(q));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < sym.size(); ++k) {
      num += sym[k] * std::norm(Q.values[k]);
      den += (std::conj(Q3.values[k]) * Q.values[k]).real();
    }
    if (!(den > 0.0)) throw std::runtime_error("ground_state: iteration collapsed");
    const double S = num / den;
    const double factor = std::pow(S, 1.5);
    SpatialField next(g);
    double diff = 0.0;
    for (std::size_t k = 0; k < sym.size(); ++k) {
      next.values[k] = factor * Q3.values[k] / sym[k];
      diff += std::norm(next.values[k] - Q.values[k]);
    }
    // keep the iterate exactly real in physical space
    std::vector<cplx> phys = to_physical(next);
    for (auto& z : phys) z = z.real();
    Q = from_physical(g, std::move(phys));
    out.iterations = it;
    out.fixed_point_residual = std::sqrt(diff) * g.dxi();
    out.stabilizing_factor = S;
    if (out.fixed_point_residual <= tol) {
      out.Q = Q;
      out.pde_residual = pde_residual(Q);
      return out;
    }
  }
  throw std::runtime_error("ground_state: no convergence after " + std::to_string(max_iter) + " iterations");
}

namespace {

// exp(i x k dxi) for the signed index k, with the Nyquist index split
// symmetrically so that real fields interpolate to real values.
cplx basis(double x, int k, int n, double dxi) {
  if (k == -n / 2) return std::cos(x * k * dxi);
  const double a = x * k * dxi;
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::vector<cplx> fourier_eval(const SpatialField& f, const std::vector<double>& x1, const std::vector<double>& x2) {
  if (x1.size() != x2.size()) throw std::invalid_argument("fourier_eval: coordinate lists differ in length");
  const auto& g = f.grid;
  const double c = g.dxi() * g.dxi() / (2.0 * kPi);
  std::vector<cplx> out(x1.size());
  std::vector<cplx> e1(g.n), e2(g.n);
  for (std::size_t p = 0; p < x1.size(); ++p) {
    for (int i = 0; i < g.n; ++i) {
      e1[i] = basis(x1[p], freq_index(i, g.n), g.n, g.dxi());
      e2[i] = basis(x2[p], freq_index(i, g.n), g.n, g.dxi());
    }
    cplx acc = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
      cplx row = 0.0;
      for (int i2 = 0; i2 < g.n; ++i2) row += f.at(i1, i2) * e2[i2];
      acc += row * e1[i1];
    }
    out[p] = c * acc;
  }
  return out;
}

std::vector<cplx> fourier_resample(const SpatialField& f, const std::vector<double>& x1,
                                   const std::vector<double>& x2) {
  const auto& g = f.grid;
  const std::size_t a = x1.size(), b = x2.size(), n = g.n;
  std::vector<cplx> E2(b * n);
  for (std::size_t q = 0; q < b; ++q)
    for (std::size_t i = 0; i < n; ++i) E2[q * n + i] = basis(x2[q], freq_index(int(i), g.n), g.n, g.dxi());
  // T[i1][q] = sum_i2 f[i1][i2] E2[q][i2]
  std::vector<cplx> T(n * b);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t q = 0; q < b; ++q) {
      cplx acc = 0.0;
      for (std::size_t i2 = 0; i2 < n; ++i2) acc += f.values[i1 * n + i2] * E2[q * n + i2];
      T[i1 * b + q] = acc;
    }
  const double c = g.dxi() * g.dxi() / (2.0 * kPi);
  std::vector<cplx> out(a * b);
  std::vector<cplx> e1(n);
  for (std::size_t p = 0; p < a; ++p) {
    for (std::size_t i = 0; i < n; ++i) e1[i] = basis(x1[p], freq_index(int(i), g.n), g.n, g.dxi());
    for (std::size_t q = 0; q < b; ++q) {
      cplx acc = 0.0;
      for (std::size_t i1 = 0; i1 < n; ++i1) acc += e1[i1] * T[i1 * b + q];
      out[p * b + q] = c * acc;
    }
  }
  return out;
}

double radial_asymmetry(const SpatialField& f, double r_max, int n_radii, int n_angles) {
  std::vector<double> x1, x2;
  for (int a = 1; a <= n_radii; ++a)
    for (int m = 0; m < n_angles; ++m) {
      const double r = r_max * a / n_radii, th = 2.0 * kPi * m / n_angles + 0.1;
      x1.push_back(r * std::cos(th));
      x2.push_back(r * std::sin(th));
    }
  const auto vals = fourier_eval(f, x1, x2);
  double peak = 0.0;
  for (const auto& v : vals) peak = std::max(peak, std::abs(v));
  double worst = 0.0;
  for (int a = 0; a < n_radii; ++a) {
    double lo = 1e300, hi = -1e300;
    for (int m = 0; m < n_angles; ++m) {
      const double v = std::abs(vals[a * n_angles + m]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, (hi - lo) / peak);
  }
  return worst;
}

}  // namespace zlab
