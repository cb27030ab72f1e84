#include "zlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zlab {

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

FrequencyGrid::FrequencyGrid(double m_box_, int n_) : m_box(m_box_), n(n_) {
  if (!(m_box > 0.0) || !std::isfinite(m_box))
    throw std::invalid_argument("FrequencyGrid: m_box must be positive");
  if (n < 8 || !is_power_of_two(n))
    throw std::invalid_argument("FrequencyGrid: n must be a power of two >= 8, got " +
                                std::to_string(n));
}

double FrequencyGrid::max_radius() const {
  const double k = (n / 2) * dxi();
  return std::sqrt(2.0) * k;
}

SpaceTimeGrid::SpaceTimeGrid(FrequencyGrid s, double tw, int nt)
    : spatial(s), t_window(tw), n_t(nt) {
  if (!(t_window > 0.0)) throw std::invalid_argument("SpaceTimeGrid: time window must be positive");
  if (n_t < 8 || !is_power_of_two(n_t))
    throw std::invalid_argument("SpaceTimeGrid: n_t must be a power of two >= 8");
}

double l2_norm(const SpatialField& u) {
  double acc = 0.0;
  for (const auto& z : u.values) acc += std::norm(z);
  return std::sqrt(acc * u.grid.dxi() * u.grid.dxi());
}

double l2_norm(const SpaceTimeField& w) {
  double acc = 0.0;
  for (const auto& z : w.values) acc += std::norm(z);
  return std::sqrt(acc * w.grid.cell_volume());
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

namespace {
template <class F>
F combine(const F& a, const F& b, double sign) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("field grids differ");
  F out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += sign * b.values[i];
  return out;
}
}  // namespace

SpatialField operator+(const SpatialField& a, const SpatialField& b) { return combine(a, b, 1.0); }
SpatialField operator-(const SpatialField& a, const SpatialField& b) { return combine(a, b, -1.0); }
SpatialField operator*(cplx c, const SpatialField& a) {
  SpatialField out = a;
  for (auto& z : out.values) z *= c;
  return out;
}
SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b) { return combine(a, b, 1.0); }
SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) { return combine(a, b, -1.0); }
SpaceTimeField operator*(cplx c, const SpaceTimeField& a) {
  SpaceTimeField out = a;
  for (auto& z : out.values) z *= c;
  return out;
}

SpatialField conjugate(const SpatialField& u) {
  const int n = u.grid.n;
  SpatialField out(u.grid);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      out.at(i1, i2) = std::conj(u.at(slot_of(-freq_index(i1, n), n), slot_of(-freq_index(i2, n), n)));
  return out;
}

SpaceTimeField conjugate(const SpaceTimeField& w) {
  const int n = w.grid.spatial.n, nt = w.grid.n_t;
  SpaceTimeField out(w.grid);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int it = 0; it < nt; ++it)
        out.at(i1, i2, it) = std::conj(w.at(slot_of(-freq_index(i1, n), n),
                                            slot_of(-freq_index(i2, n), n),
                                            slot_of(-freq_index(it, nt), nt)));
  return out;
}

}  // namespace zlab
