#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

enum class Integrator { StrangSplit, InteractionRK4 };

struct SolverConfig {
  FrequencyGrid grid;
  double dt = 1e-3;
  double wave_speed = 1.0;  // lambda >= 1
  bool dealias = true;
  Integrator integrator = Integrator::StrangSplit;
  int snapshot_every = 100;
  // When false only the linear groups are applied (used for exactness checks).
  bool nonlinear = true;

  void validate() const;
};

struct SolverState {
  SpatialField u;
  SpatialField v;
  double t = 0.0;
};

struct Diagnostics {
  double t = 0.0;
  double mass = 0.0;      // ||u||_{L2}^2
  double hm12_n = 0.0;    // ||n||_{H^{-1/2}}
  double hm32_dtn = 0.0;  // ||d_t n||_{H^{-3/2}}
};

struct Trajectory {
  SolverConfig config;
  std::vector<SolverState> snapshots;
  std::vector<Diagnostics> diagnostics;
  // Set when the growth guard stopped the run early.
  bool aborted = false;
  std::string abort_reason;
};

// Wave symbol (1 + lambda^2 |xi|^2)^{1/2}; lambda = 1 gives <xi>.
inline double wave_symbol(double lambda, double rxi2) { return std::sqrt(1.0 + lambda * lambda * rxi2); }

}  // namespace zlab
