#pragma once

#include <vector>

#include "zlab/grid.hpp"
#include "zlab/solver_types.hpp"

namespace zlab {

enum class Model { ReducedZakharov, CubicNLS };

// Advances (u_hat, v_hat) of the reduced system
//   i u_t + Delta u = (Re v) u
//   i v_t - Omega v = -lambda^2 Delta/Omega |u|^2 - Omega^{-1} Re v
// or u_hat of the focusing cubic NLS. Linear flows are exact multipliers.
class Stepper {
 public:
  Stepper(const SolverConfig& cfg, Model model);
  // One step of size dt (negative dt runs backwards).
  void step(SolverState& s, double dt);

 private:
  void linear(SolverState& s, double dt);
  void nonlinear_split(SolverState& s, double dt);
  void rk4(SolverState& s, double dt);
  // Nonlinear vector field in Fourier variables (dealiased).
  void field(const std::vector<cplx>& u, const std::vector<cplx>& v, std::vector<cplx>& du,
             std::vector<cplx>& dv);
  void prepare_phases(double dt);
  void mask(std::vector<cplx>& a) const;

  SolverConfig cfg_;
  Model model_;
  std::vector<double> r2_, omega_, m_rho_, m_rev_, keep_;
  std::vector<int> reflect_;
  double cached_dt_ = 0.0;
  std::vector<cplx> eu_half_, ev_half_, eu_full_, ev_full_;
};

Diagnostics diagnostics(const SolverState& s, double lambda);

// Strang splitting (default) or interaction-picture RK4 on the reduced system.
Trajectory solve_reduced(const SolverConfig& cfg, const SpatialField& u0, const SpatialField& v0,
                         double T);
// Reduces (u0, n0, n1) with the lambda-scaled symbol and solves.
Trajectory solve_speed(const SolverConfig& cfg, const SpatialField& u0, const SpatialField& n0,
                       const SpatialField& n1, double T);
Trajectory solve_nls(const SolverConfig& cfg, const SpatialField& u0, double T);

// Scaling u -> mu u(mu^2 t, mu x), n -> mu^2 n(mu^2 t, mu x) applied to every
// snapshot; the grid box shrinks by mu, times by mu^2, and the wave speed grows by mu.
Trajectory rescale_solution(const Trajectory& traj, double mu);

// c0 * min{(1 + R^2)^{-1} r^{-2}, 1}
double lifespan_bound(double R, double r, double c0);

}  // namespace zlab
