#pragma once

#include <array>
#include <stdexcept>

#include "zlab/grid.hpp"

namespace oracle {

using zlab::kPi;

// Radial shooting for Q'' + Q'/r = Q - Q^3, Q'(0) = 0. Returns +1 if the
// trajectory overshoots through zero, -1 if it turns back up, with the mass
// 2 pi int Q^2 r dr accumulated up to the decision radius.
struct Shot {
  int side;
  double mass;
};

inline Shot shoot(double a) {
  const double h = 1e-3;
  double r = 1e-3;
  // series start Q = a + (a - a^3) r^2 / 4
  std::array<double, 2> y{a + (a - a * a * a) * r * r / 4.0, (a - a * a * a) * r / 2.0};
  auto rhs = [](double rr, const std::array<double, 2>& z) {
    return std::array<double, 2>{z[1], z[0] - z[0] * z[0] * z[0] - z[1] / rr};
  };
  double mass = kPi * a * a * r * r;
  while (r < 30.0) {
    const auto k1 = rhs(r, y);
    const auto k2 = rhs(r + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
    const auto k3 = rhs(r + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
    const auto k4 = rhs(r + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    const double q0 = y[0];
    for (int i = 0; i < 2; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    mass += 2 * kPi * h * 0.5 * (q0 * q0 * r + y[0] * y[0] * (r + h));
    r += h;
    if (y[0] < 0.0) return {+1, mass};
    if (y[1] > 0.0) return {-1, mass};
  }
  return {0, mass};
}

inline double townes_mass_by_shooting() {
  double lo = 2.0, hi = 2.4;
  if (shoot(lo).side != -1 || shoot(hi).side != +1) throw std::runtime_error("shooting bracket is invalid");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid).side > 0 ? hi : lo) = mid;
  }
  return shoot(lo).mass;
}

}  // namespace oracle
