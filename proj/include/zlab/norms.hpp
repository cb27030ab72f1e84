#pragma once

#include <vector>

#include "zlab/grid.hpp"
#include "zlab/projectors.hpp"
#include "zlab/solver_types.hpp"

namespace zlab {

struct NormSpec {
  Flavor flavor = Flavor::S;
  double sigma = 0.0;
  double b = 0.0;
  double p = 2.0;  // 1, 2 or infinity

  NormSpec() = default;
  NormSpec(Flavor f, double sigma, double b, double p);
};

// (sum_xi <xi>^{2s} |u_hat|^2 dxi^2)^{1/2}
double sobolev_norm(const SpatialField& u, double s);
// Homogeneous variant (sum_{xi != 0} |xi|^{2s} |u_hat|^2 dxi^2)^{1/2}.
double homogeneous_sobolev_norm(const SpatialField& u, double s);

// Squared L2 mass of S_L P_N w for every (N, L) block.
struct BlockTable {
  std::vector<double> N;        // dyadic frequency bands
  std::vector<double> L;        // dyadic modulation bands
  std::vector<double> mass_sq;  // row-major [iN * L.size() + iL]
  double top_N = 0.0;           // truncation of the dyadic sums (grid range)
  double top_L = 0.0;
  double at(std::size_t iN, std::size_t iL) const { return mass_sq[iN * L.size() + iL]; }
};

BlockTable block_table(const SpaceTimeField& w, Flavor f);
double bourgain_norm(const BlockTable& t, double sigma, double b, double p);
double bourgain_norm(const SpaceTimeField& w, const NormSpec& spec);

// sup over the sampled times t_k = k * t_window / n_t of ||w(t_k)||_{H^s}.
double sup_time_sobolev(const SpaceTimeField& w, double s);

struct DataTriple {
  SpatialField u0;
  SpatialField n0;
  SpatialField n1;
};

struct ProductNorm {
  double full = 0.0;  // R
  double mass = 0.0;  // r = ||u0||_{L2}
};

// Checks that n0 and n1 are real functions (Hermitian coefficients to 1e-12).
void validate_triple(const DataTriple& d);
ProductNorm product_norm(const DataTriple& d, double k, double l);

// n = Re v, d_t n = Omega_lambda Im v for the stored reduced variable.
void reconstruct_wave(const SpatialField& v, double lambda, SpatialField& n, SpatialField& dtn);

// (sup_t ||u||_{H^k}^2 + sup_t ||n||_{H^l}^2 + sup_t ||d_t n||_{H^{l-1}}^2)^{1/2}
// over the stored snapshots.
double xkl_trajectory_norm(const Trajectory& traj, double k, double l);

}  // namespace zlab
