#pragma once

#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

// Samples g(t_j) at t_j = t0 + j * dt; by default centered on t = 0.
struct TimeSeries1D {
  double dt = 1.0;
  double t0 = 0.0;
  std::vector<cplx> values;

  TimeSeries1D() = default;
  TimeSeries1D(double dt, std::vector<cplx> values);  // centered
  TimeSeries1D(double dt, double t0, std::vector<cplx> values);
  double t(std::size_t j) const { return t0 + static_cast<double>(j) * dt; }
};

// Norms of the dyadic pieces ||P_L g||_{L2}, L = 1, 2, 4, ... up to the sampling range.
struct DyadicProfile {
  std::vector<double> L;
  std::vector<double> norm;
};

DyadicProfile dyadic_profile(const TimeSeries1D& g);
double l2_norm(const TimeSeries1D& g);

// B^b_{2,1} (p = 1) or B^b_{2,inf} (p = inf).
double besov_norm_1d(const TimeSeries1D& g, double b, double p);

// g * psi(t / T)
TimeSeries1D cutoff_in_time(const TimeSeries1D& g, double T);

struct NormEquivalence {
  double lhs = 0.0;        // ||g psi_T||_{B^b_{2,1}}
  double rhs = 0.0;        // low_term + high_term
  double low_term = 0.0;   // T^{-b} ||P_{<=1/T}(g psi_T)||
  double low_norm = 0.0;   // ||P_{<=1/T}(g psi_T)||
  double high_term = 0.0;  // sum_{L > 1/T} L^b ||P_L(g psi_T)||
};

NormEquivalence norm_equiv_check(const TimeSeries1D& g, double T, double b);
double besov_scaling_check(const TimeSeries1D& g, double T, double b);

// Running integral int_0^t g by the trapezoid rule (t = 0 must be a sample point).
TimeSeries1D time_integral(const TimeSeries1D& g);
double besov_duhamel_check(const TimeSeries1D& g, double T);

}  // namespace zlab
