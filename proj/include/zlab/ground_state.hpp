#pragma once

#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

struct GroundState {
  SpatialField Q;
  int iterations = 0;
  double fixed_point_residual = 0.0;  // ||Q_{m+1} - Q_m||_{L2}
  double pde_residual = 0.0;          // ||-Q + Delta Q + Q^3||_{L2}
  double stabilizing_factor = 0.0;    // S_m at convergence (tends to 1)
};

// Petviashvili iteration for -Q + Delta Q + Q^3 = 0 from a Gaussian seed.
GroundState ground_state(const FrequencyGrid& grid, double tol, int max_iter = 10000);

double pde_residual(const SpatialField& Q);

// Trigonometric interpolation of the field at arbitrary physical points.
std::vector<cplx> fourier_eval(const SpatialField& f, const std::vector<double>& x1,
                               const std::vector<double>& x2);
// Values on the tensor grid x1 x x2 (row-major over x1), via separable matrices.
std::vector<cplx> fourier_resample(const SpatialField& f, const std::vector<double>& x1,
                                   const std::vector<double>& x2);

// Max relative deviation of |f| between points of equal radius
// (radii in (0, r_max], several angles each).
double radial_asymmetry(const SpatialField& f, double r_max, int n_radii = 24, int n_angles = 16);

}  // namespace zlab
