#include "zlab/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/fft.hpp"
#include "zlab/norms.hpp"
#include "zlab/propagators.hpp"
#include "zlab/simd.hpp"

namespace zlab {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(wave_speed >= 1.0)) throw std::invalid_argument("SolverConfig: wave speed must be >= 1");
  if (snapshot_every < 1) throw std::invalid_argument("SolverConfig: snapshot_every must be >= 1");
}

Stepper::Stepper(const SolverConfig& cfg, Model model) : cfg_(cfg), model_(model) {
  const auto& g = cfg_.grid;
  const std::size_t sz = g.size();
  const double lam = cfg_.wave_speed;
  r2_.resize(sz);
  omega_.resize(sz);
  m_rho_.resize(sz);
  m_rev_.resize(sz);
  keep_.resize(sz);
  reflect_.resize(sz);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const std::size_t k = g.index(i1, i2);
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      r2_[k] = r2;
      omega_[k] = wave_symbol(lam, r2);
      m_rho_[k] = -lam * lam * r2 / omega_[k];
      m_rev_[k] = 1.0 / omega_[k];
      const int k1 = freq_index(i1, g.n), k2 = freq_index(i2, g.n);
      const bool inside = 3 * std::abs(k1) <= g.n && 3 * std::abs(k2) <= g.n;
      keep_[k] = (!cfg_.dealias || inside) ? 1.0 : 0.0;
      reflect_[k] = static_cast<int>(g.index(slot_of(-k1, g.n), slot_of(-k2, g.n)));
    }
}

void Stepper::prepare_phases(double dt) {
  if (dt == cached_dt_ && !eu_half_.empty()) return;
  const std::size_t sz = r2_.size();
  eu_half_.resize(sz);
  ev_half_.resize(sz);
  eu_full_.resize(sz);
  ev_full_.resize(sz);
  for (std::size_t k = 0; k < sz; ++k) {
    const double a = -0.5 * dt * r2_[k], b = -0.5 * dt * omega_[k];
    eu_half_[k] = {std::cos(a), std::sin(a)};
    ev_half_[k] = {std::cos(b), std::sin(b)};
    eu_full_[k] = {std::cos(2 * a), std::sin(2 * a)};
    ev_full_[k] = {std::cos(2 * b), std::sin(2 * b)};
  }
  cached_dt_ = dt;
}

void Stepper::mask(std::vector<cplx>& a) const {
  if (cfg_.dealias) simd::active().mul_real(a.data(), keep_.data(), a.size());
}

void Stepper::linear(SolverState& s, double dt) {
  prepare_phases(dt);
  const auto& k = simd::active();
  k.mul_complex(s.u.values.data(), eu_half_.data(), eu_half_.size());
  if (model_ == Model::ReducedZakharov) k.mul_complex(s.v.values.data(), ev_half_.data(), ev_half_.size());
}

void Stepper::nonlinear_split(SolverState& s, double dt) {
  const auto& g = cfg_.grid;
  const auto& k = simd::active();
  std::vector<cplx> u = to_physical(s.u);
  std::vector<double> rho(u.size());
  if (model_ == Model::CubicNLS) {
    k.abs2(u.data(), rho.data(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= cplx(std::cos(dt * rho[i]), std::sin(dt * rho[i]));
    s.u = from_physical(g, std::move(u));
    mask(s.u.values);
    return;
  }
  // Re v and |u|^2 are invariant during this substep, so both updates are exact.
  const std::vector<cplx> v = to_physical(s.v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = -dt * v[i].real();
    u[i] *= cplx(std::cos(a), std::sin(a));
  }
  k.abs2(u.data(), rho.data(), u.size());
  std::vector<cplx> rho_c(rho.begin(), rho.end());
  SpatialField rho_hat = from_physical(g, std::move(rho_c));
  mask(rho_hat.values);
  std::vector<cplx> rev(s.v.values.size());
  for (std::size_t i = 0; i < rev.size(); ++i) rev[i] = 0.5 * (s.v.values[i] + std::conj(s.v.values[reflect_[i]]));
  s.u = from_physical(g, std::move(u));
  mask(s.u.values);
  k.coupled_update(s.v.values.data(), m_rho_.data(), rho_hat.values.data(), m_rev_.data(), rev.data(), dt,
                   rev.size());
}

void Stepper::field(const std::vector<cplx>& uh, const std::vector<cplx>& vh, std::vector<cplx>& du,
                    std::vector<cplx>& dv) {
  const auto& g = cfg_.grid;
  SpatialField tmp(g);
  tmp.values = uh;
  std::vector<cplx> u = to_physical(tmp);
  std::vector<double> rho(u.size());
  simd::active().abs2(u.data(), rho.data(), u.size());
  if (model_ == Model::CubicNLS) {
    // u_t = i Delta u + i |u|^2 u
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= cplx(0.0, rho[i]);
    du = from_physical(g, std::move(u)).values;
    mask(du);
    dv.assign(vh.size(), 0.0);
    return;
  }
  tmp.values = vh;
  const std::vector<cplx> v = to_physical(tmp);
  // u_t = i Delta u - i (Re v) u
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= cplx(0.0, -v[i].real());
  du = from_physical(g, std::move(u)).values;
  mask(du);
  std::vector<cplx> rho_c(rho.begin(), rho.end());
  std::vector<cplx> rho_hat = from_physical(g, std::move(rho_c)).values;
  mask(rho_hat);
  dv.assign(vh.size(), 0.0);
  std::vector<cplx> rev(vh.size());
  for (std::size_t i = 0; i < rev.size(); ++i) rev[i] = 0.5 * (vh[i] + std::conj(vh[reflect_[i]]));
  simd::active().coupled_update(dv.data(), m_rho_.data(), rho_hat.data(), m_rev_.data(), rev.data(), 1.0,
                                rev.size());
}

void Stepper::rk4(SolverState& s, double dt) {
  // Lawson (integrating-factor) RK4 in the interaction picture.
  prepare_phases(dt);
  const auto& k = simd::active();
  const std::size_t n = s.u.values.size();
  const bool wave = model_ == Model::ReducedZakharov;
  auto ehalf = [&](std::vector<cplx>& u, std::vector<cplx>& v) {
    k.mul_complex(u.data(), eu_half_.data(), n);
    if (wave) k.mul_complex(v.data(), ev_half_.data(), n);
  };
  auto efull = [&](std::vector<cplx>& u, std::vector<cplx>& v) {
    k.mul_complex(u.data(), eu_full_.data(), n);
    if (wave) k.mul_complex(v.data(), ev_full_.data(), n);
  };
  auto axpy = [n](std::vector<cplx>& y, const std::vector<cplx>& x, double a) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
  };
  const std::vector<cplx> u0 = s.u.values, v0 = s.v.values;
  std::vector<cplx> k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  field(u0, v0, k1u, k1v);
  std::vector<cplx> yu = u0, yv = v0;
  axpy(yu, k1u, dt / 2);
  axpy(yv, k1v, dt / 2);
  ehalf(yu, yv);
  field(yu, yv, k2u, k2v);
  std::vector<cplx> hu = u0, hv = v0;  // E_half y0
  ehalf(hu, hv);
  yu = hu;
  yv = hv;
  axpy(yu, k2u, dt / 2);
  axpy(yv, k2v, dt / 2);
  field(yu, yv, k3u, k3v);
  // y4 = E y0 + dt E_half k3
  std::vector<cplx> eu = u0, ev = v0;
  efull(eu, ev);
  std::vector<cplx> t3u = k3u, t3v = k3v;
  ehalf(t3u, t3v);
  yu = eu;
  yv = ev;
  axpy(yu, t3u, dt);
  axpy(yv, t3v, dt);
  field(yu, yv, k4u, k4v);
  // y1 = E y0 + dt/6 (E k1 + 2 E_half (k2 + k3) + k4)
  efull(k1u, k1v);
  std::vector<cplx> su = k2u, sv = k2v;
  axpy(su, k3u, 1.0);
  axpy(sv, k3v, 1.0);
  ehalf(su, sv);
  for (std::size_t i = 0; i < n; ++i) {
    s.u.values[i] = eu[i] + dt / 6.0 * (k1u[i] + 2.0 * su[i] + k4u[i]);
    if (wave) s.v.values[i] = ev[i] + dt / 6.0 * (k1v[i] + 2.0 * sv[i] + k4v[i]);
  }
}

void Stepper::step(SolverState& s, double dt) {
  if (!cfg_.nonlinear) {
    linear(s, dt);
    linear(s, dt);
  } else if (cfg_.integrator == Integrator::InteractionRK4) {
    rk4(s, dt);
  } else {
    linear(s, dt);
    nonlinear_split(s, dt);
    linear(s, dt);
  }
  s.t += dt;
}

Diagnostics diagnostics(const SolverState& s, double lambda) {
  Diagnostics d;
  d.t = s.t;
  const double m = sobolev_norm(s.u, 0.0);
  d.mass = m * m;
  if (!s.v.values.empty()) {
    const WaveData w = reconstruct(s.v, lambda);
    d.hm12_n = sobolev_norm(w.n, -0.5);
    d.hm32_dtn = sobolev_norm(w.dtn, -1.5);
  }
  return d;
}

namespace {

Trajectory run(const SolverConfig& cfg, Model model, SolverState s, double T) {
  cfg.validate();
  if (!(T > 0.0)) throw std::invalid_argument("solve: T must be positive");
  if (!(s.u.grid == cfg.grid)) throw std::invalid_argument("solve: data grid differs from config grid");
  const long long steps = std::max(1LL, static_cast<long long>(std::ceil(T / cfg.dt - 1e-9)));
  const double dt = T / static_cast<double>(steps);
  Trajectory traj;
  traj.config = cfg;
  traj.config.dt = dt;
  const double lambda = model == Model::CubicNLS ? 1.0 : cfg.wave_speed;
  traj.snapshots.push_back(s);
  traj.diagnostics.push_back(diagnostics(s, lambda));
  const double h1_0 = sobolev_norm(s.u, 1.0);
  Stepper stepper(cfg, model);
  for (long long k = 1; k <= steps; ++k) {
    stepper.step(s, dt);
    if (k == steps) s.t = T;
    const bool snap = (k % cfg.snapshot_every == 0) || k == steps;
    if (!snap) continue;
    const double h1 = sobolev_norm(s.u, 1.0);
    traj.snapshots.push_back(s);
    traj.diagnostics.push_back(diagnostics(s, lambda));
    if (!std::isfinite(h1) || (h1_0 > 0.0 && h1 > 1e6 * h1_0)) {
      traj.aborted = true;
      traj.abort_reason = "growth guard: ||u||_{H^1} exceeded 1e6 x initial at t=" + std::to_string(s.t);
      break;
    }
  }
  return traj;
}

}  // namespace

Trajectory solve_reduced(const SolverConfig& cfg, const SpatialField& u0, const SpatialField& v0, double T) {
  if (!(u0.grid == v0.grid)) throw std::invalid_argument("solve_reduced: u0 and v0 grids differ");
  return run(cfg, Model::ReducedZakharov, {u0, v0, 0.0}, T);
}

Trajectory solve_speed(const SolverConfig& cfg, const SpatialField& u0, const SpatialField& n0,
                       const SpatialField& n1, double T) {
  const ReducedData d = reduce_data(u0, n0, n1, cfg.wave_speed);
  return solve_reduced(cfg, d.u, d.v, T);
}

Trajectory solve_nls(const SolverConfig& cfg, const SpatialField& u0, double T) {
  return run(cfg, Model::CubicNLS, {u0, SpatialField(), 0.0}, T);
}

Trajectory rescale_solution(const Trajectory& traj, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("rescale_solution: mu must be positive");
  Trajectory out;
  out.config = traj.config;
  const FrequencyGrid g(traj.config.grid.m_box / mu, traj.config.grid.n);
  out.config.grid = g;
  out.config.dt = traj.config.dt / (mu * mu);
  out.config.wave_speed = traj.config.wave_speed * mu;
  const bool has_wave = !traj.snapshots.empty() && !traj.snapshots.front().v.values.empty();
  for (const auto& s : traj.snapshots) {
    SolverState r;
    r.t = s.t / (mu * mu);
    r.u = SpatialField(g);
    for (std::size_t i = 0; i < s.u.values.size(); ++i) r.u.values[i] = s.u.values[i] / mu;
    if (has_wave) {
      const WaveData w = reconstruct(s.v, traj.config.wave_speed);
      r.v = SpatialField(g);
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
          const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
          r.v.at(i1, i2) = w.n.at(i1, i2) +
                           cplx(0.0, 1.0) * mu * mu * w.dtn.at(i1, i2) / wave_symbol(out.config.wave_speed, r2);
        }
    }
    out.diagnostics.push_back(diagnostics(r, out.config.wave_speed));
    out.snapshots.push_back(std::move(r));
  }
  return out;
}

double lifespan_bound(double R, double r, double c0) {
  if (!(r > 0.0)) throw std::invalid_argument("lifespan_bound: r must be positive");
  if (r > R) throw std::invalid_argument("lifespan_bound: requires r <= R");
  return c0 * std::min(1.0 / ((1.0 + R * R) * r * r), 1.0);
}

}  // namespace zlab
