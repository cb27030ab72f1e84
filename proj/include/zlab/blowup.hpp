#pragma once

#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

struct AnsatzSpec {
  double omega = 10.0;
  double theta = 0.0;
  double T_blow = 1.0;
  SpatialField P;  // Schroedinger profile
  SpatialField N;  // wave profile (real)

  void validate() const;
};

struct AnsatzFields {
  double s = 1.0;  // (T - t) / omega
  // All three live on the co-moving grid with box m_box * s, on which the
  // self-similar scaling is exact: n_hat(xi) = N_hat(s xi).
  SpatialField u;
  SpatialField n;
  SpatialField dtn;
};

// u = (1/s) e^{i(theta + omega/s - s|y|^2/(4 omega))} P(y), n = s^{-2} N(y), y = x/s,
// d_t n = (1/omega) s^{-3} (2N + y.grad N)(y).
AnsatzFields ansatz_eval(const AnsatzSpec& spec, double t);

// Physical samples of (u, n, d_t n) on a fixed grid by Fourier interpolation of
// the profiles; errors if the rescaled profiles do not fit the grid.
struct AnsatzSamples {
  std::vector<cplx> u, n, dtn;
};
AnsatzSamples ansatz_on_grid(const AnsatzSpec& spec, double t, const FrequencyGrid& g);

struct BlowupRow {
  double t = 0.0;
  double s = 0.0;
  double hm12_n = 0.0;       // ||n||_{H^{-1/2}}
  double hdot_m12_n = 0.0;   // ||n||_{\dot H^{-1/2}}
  double hm32_dtn = 0.0;     // ||d_t n||_{H^{-3/2}}
  double l2_u = 0.0;
};

std::vector<BlowupRow> blowup_norm_trace(const AnsatzSpec& spec, const std::vector<double>& times);

// Profiles (Q, -Q^2) from a ground state, or the Gaussian stand-ins (e^{-|x|^2}, -e^{-2|x|^2}).
AnsatzSpec ansatz_from_ground_state(const SpatialField& Q, double omega, double theta, double T_blow);
AnsatzSpec gaussian_ansatz(const FrequencyGrid& g, double omega, double theta, double T_blow);

}  // namespace zlab
