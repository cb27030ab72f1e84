#include "zlab/blowup.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/fft.hpp"
#include "zlab/ground_state.hpp"
#include "zlab/norms.hpp"

namespace zlab {

void AnsatzSpec::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("AnsatzSpec: omega must be positive");
  if (!(T_blow > 0.0)) throw std::invalid_argument("AnsatzSpec: T_blow must be positive");
  if (!(P.grid == N.grid)) throw std::invalid_argument("AnsatzSpec: profiles on different grids");
  const SpatialField c = conjugate(N);
  double d = 0.0;
  for (std::size_t i = 0; i < c.values.size(); ++i) d = std::max(d, std::abs(c.values[i] - N.values[i]));
  if (d > 1e-12 * std::max(1.0, max_abs(N.values))) throw std::invalid_argument("AnsatzSpec: N profile must be real");
  const double rmax = 0.4 * P.grid.n * P.grid.dx();
  if (radial_asymmetry(P, rmax, 8, 8) > 1e-6 || radial_asymmetry(N, rmax, 8, 8) > 1e-6)
    throw std::invalid_argument("AnsatzSpec: profiles must be radially symmetric");
}

namespace {

double s_of(const AnsatzSpec& spec, double t) {
  if (!(t < spec.T_blow)) throw std::invalid_argument("ansatz: t must be below the blow-up time");
  return (spec.T_blow - t) / spec.omega;
}

// 2N + y.grad N on the profile grid.
SpatialField scaling_generator(const SpatialField& N) {
  const auto& g = N.grid;
  SpatialField d1(g), d2(g);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const bool nyq = i1 == g.n / 2 || i2 == g.n / 2;
      d1.at(i1, i2) = nyq ? cplx(0.0) : cplx(0.0, g.xi(i1)) * N.at(i1, i2);
      d2.at(i1, i2) = nyq ? cplx(0.0) : cplx(0.0, g.xi(i2)) * N.at(i1, i2);
    }
  const auto p1 = to_physical(d1), p2 = to_physical(d2), pn = to_physical(N);
  std::vector<cplx> m(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) {
      const std::size_t k = g.index(j1, j2);
      m[k] = (2.0 * pn[k] + g.x(j1) * p1[k] + g.x(j2) * p2[k]).real();
    }
  return from_physical(g, std::move(m));
}

// e^{i(theta + omega/s - s|y|^2/(4 omega))} P(y) on the profile grid.
SpatialField chirped_profile(const AnsatzSpec& spec, double s) {
  const auto& g = spec.P.grid;
  auto p = to_physical(spec.P);
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) {
      const double y2 = g.x(j1) * g.x(j1) + g.x(j2) * g.x(j2);
      const double phase = std::fmod(spec.theta + spec.omega / s, 2.0 * kPi) - s * y2 / (4.0 * spec.omega);
      p[g.index(j1, j2)] *= cplx(std::cos(phase), std::sin(phase));
    }
  return from_physical(g, std::move(p));
}

}  // namespace

AnsatzFields ansatz_eval(const AnsatzSpec& spec, double t) {
  const double s = s_of(spec, t);
  const auto& g = spec.P.grid;
  const FrequencyGrid co(g.m_box * s, g.n);
  AnsatzFields out;
  out.s = s;
  // u(x) = s^{-1} G(x/s) has u_hat(xi) = s G_hat(s xi)
  out.u = SpatialField(co);
  const SpatialField G = chirped_profile(spec, s);
  for (std::size_t k = 0; k < G.values.size(); ++k) out.u.values[k] = s * G.values[k];
  out.n = SpatialField(co);
  out.n.values = spec.N.values;
  const SpatialField M = scaling_generator(spec.N);
  out.dtn = SpatialField(co);
  for (std::size_t k = 0; k < M.values.size(); ++k) out.dtn.values[k] = M.values[k] / (spec.omega * s);
  return out;
}

AnsatzSamples ansatz_on_grid(const AnsatzSpec& spec, double t, const FrequencyGrid& g) {
  const double s = s_of(spec, t);
  const auto& pg = spec.P.grid;
  // the profile box scaled by s must fit inside the target box, and the
  // target lattice must resolve the profile's band scaled by 1/s
  if (pg.m_box * s > g.m_box * (1.0 + 1e-12))
    throw std::invalid_argument("ansatz_on_grid: rescaled profile box overflows the target grid");
  if (pg.nyquist() / s > g.nyquist() * (1.0 + 1e-12))
    throw std::invalid_argument("ansatz_on_grid: target grid does not resolve the rescaled profile");
  std::vector<double> y(g.n);
  for (int j = 0; j < g.n; ++j) y[j] = g.x(j) / s;
  const double half = pg.n * pg.dx() / 2.0;
  AnsatzSamples out;
  const SpatialField G = chirped_profile(spec, s);
  const SpatialField M = scaling_generator(spec.N);
  out.u = fourier_resample(G, y, y);
  out.n = fourier_resample(spec.N, y, y);
  out.dtn = fourier_resample(M, y, y);
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) {
      const std::size_t k = g.index(j1, j2);
      // outside the profile box the periodic images are not part of the ansatz
      if (std::fabs(y[j1]) >= half || std::fabs(y[j2]) >= half) {
        out.u[k] = out.n[k] = out.dtn[k] = 0.0;
        continue;
      }
      out.u[k] /= s;
      out.n[k] /= s * s;
      out.dtn[k] /= spec.omega * s * s * s;
    }
  return out;
}

std::vector<BlowupRow> blowup_norm_trace(const AnsatzSpec& spec, const std::vector<double>& times) {
  std::vector<BlowupRow> rows;
  for (double t : times) {
    const AnsatzFields f = ansatz_eval(spec, t);
    BlowupRow r;
    r.t = t;
    r.s = f.s;
    r.hm12_n = sobolev_norm(f.n, -0.5);
    r.hdot_m12_n = homogeneous_sobolev_norm(f.n, -0.5);
    r.hm32_dtn = sobolev_norm(f.dtn, -1.5);
    r.l2_u = sobolev_norm(f.u, 0.0);
    rows.push_back(r);
  }
  return rows;
}

AnsatzSpec ansatz_from_ground_state(const SpatialField& Q, double omega, double theta, double T_blow) {
  AnsatzSpec spec;
  spec.omega = omega;
  spec.theta = theta;
  spec.T_blow = T_blow;
  spec.P = Q;
  auto q = to_physical(Q);
  for (auto& z : q) z = -z.real() * z.real();
  spec.N = from_physical(Q.grid, std::move(q));
  return spec;
}

AnsatzSpec gaussian_ansatz(const FrequencyGrid& g, double omega, double theta, double T_blow) {
  std::vector<cplx> p(g.size()), n(g.size());
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) {
      const double r2 = g.x(j1) * g.x(j1) + g.x(j2) * g.x(j2);
      p[g.index(j1, j2)] = std::exp(-r2);
      n[g.index(j1, j2)] = -std::exp(-2.0 * r2);
    }
  AnsatzSpec spec;
  spec.omega = omega;
  spec.theta = theta;
  spec.T_blow = T_blow;
  spec.P = from_physical(g, std::move(p));
  spec.N = from_physical(g, std::move(n));
  return spec;
}

}  // namespace zlab
