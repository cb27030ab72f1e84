#pragma once

#include <functional>

#include "zlab/grid.hpp"

namespace zlab {

// e^{-i t |xi|^2} phi (solves i u_t + Delta u = 0).
SpatialField free_schrodinger(const SpatialField& phi, double t);
// e^{-i t Omega_lambda} phi with Omega_lambda = (1 + lambda^2 |xi|^2)^{1/2}.
SpatialField free_halfwave(const SpatialField& phi, double t, double lambda = 1.0);

using FieldSampler = std::function<SpatialField(double)>;

// int_0^t e^{-i (t-s) |xi|^2} f(s) ds by composite Simpson on the interaction
// picture integrand; dt_quad must divide t.
SpatialField duhamel_S(const FieldSampler& f, double t, double dt_quad);
// int_0^t e^{-i (t-s) Omega_lambda} f(s) ds, same quadrature.
SpatialField duhamel_W(const FieldSampler& f, double t, double dt_quad, double lambda = 1.0);

struct ReducedData {
  SpatialField u;
  SpatialField v;
};

struct WaveData {
  SpatialField n;
  SpatialField dtn;
};

// v0 = n0 + i Omega_lambda^{-1} n1; n0 and n1 must be real functions.
ReducedData reduce_data(const SpatialField& u0, const SpatialField& n0, const SpatialField& n1,
                        double lambda = 1.0);
// n = Re v, d_t n = Omega_lambda Im v.
WaveData reconstruct(const SpatialField& v, double lambda = 1.0);

}  // namespace zlab
