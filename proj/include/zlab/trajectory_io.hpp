#pragma once

#include <string>

#include "zlab/solver_types.hpp"

namespace zlab {

// Binary snapshot container, little-endian:
//   8 bytes  magic "ZLABTRJ1"
//   u32      n (points per dimension)
//   u32      snapshot count
//   u32      flags (bit 0: snapshots carry v)
//   u32      reserved (0)
//   f64      m_box, dt, wave_speed
//   per snapshot: f64 t, then n*n complex (f64 re, f64 im) for u_hat,
//   then the same for v_hat when flag bit 0 is set.
// Coefficients are stored in FFT order with the normalization of SpatialField.
void write_trajectory(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory(const std::string& path);

}  // namespace zlab
