#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Signed frequency index of storage slot i on an n-point FFT lattice.
inline int freq_index(int i, int n) { return i < n / 2 ? i : i - n; }
// Storage slot of signed index k (k taken modulo n).
inline int slot_of(int k, int n) { return ((k % n) + n) % n; }

bool is_power_of_two(long long n);

// Periodic square of side 2*pi*m_box discretized by n points per dimension.
// Frequencies live on the lattice (1/m_box) Z^2 truncated to [-n/2, n/2).
struct FrequencyGrid {
  double m_box = 1.0;
  int n = 8;

  FrequencyGrid() = default;
  FrequencyGrid(double m_box, int n);

  double dxi() const { return 1.0 / m_box; }
  double dx() const { return 2.0 * kPi * m_box / n; }
  double nyquist() const { return n * dxi() / 2.0; }
  // Largest |xi| on the lattice (a corner point).
  double max_radius() const;
  double xi(int i) const { return freq_index(i, n) * dxi(); }
  // Physical coordinate of sample j, centered so that x = 0 sits at j = n/2.
  double x(int j) const { return (j - n / 2) * dx(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int i1, int i2) const { return static_cast<std::size_t>(i1) * n + i2; }

  bool operator==(const FrequencyGrid& o) const { return m_box == o.m_box && n == o.n; }
};

struct SpaceTimeGrid {
  FrequencyGrid spatial;
  double t_window = 1.0;
  int n_t = 8;

  SpaceTimeGrid() = default;
  SpaceTimeGrid(FrequencyGrid spatial, double t_window, int n_t);

  double dtau() const { return 2.0 * kPi / t_window; }
  double tau(int it) const { return freq_index(it, n_t) * dtau(); }
  double cell_volume() const { return spatial.dxi() * spatial.dxi() * dtau(); }
  std::size_t size() const { return spatial.size() * n_t; }
  std::size_t index(int i1, int i2, int it) const {
    return (static_cast<std::size_t>(i1) * spatial.n + i2) * n_t + it;
  }

  bool operator==(const SpaceTimeGrid& o) const {
    return spatial == o.spatial && t_window == o.t_window && n_t == o.n_t;
  }
};

// Fourier coefficients on the xi-lattice, normalized so that
// sum |u_hat|^2 dxi^2 is the L2 norm squared of the physical function.
struct SpatialField {
  FrequencyGrid grid;
  std::vector<cplx> values;

  SpatialField() = default;
  explicit SpatialField(const FrequencyGrid& g) : grid(g), values(g.size()) {}

  cplx& at(int i1, int i2) { return values[grid.index(i1, i2)]; }
  const cplx& at(int i1, int i2) const { return values[grid.index(i1, i2)]; }
};

// Fourier coefficients on the (xi, tau)-lattice of a space-time function.
struct SpaceTimeField {
  SpaceTimeGrid grid;
  std::vector<cplx> values;

  SpaceTimeField() = default;
  explicit SpaceTimeField(const SpaceTimeGrid& g) : grid(g), values(g.size()) {}

  cplx& at(int i1, int i2, int it) { return values[grid.index(i1, i2, it)]; }
  const cplx& at(int i1, int i2, int it) const { return values[grid.index(i1, i2, it)]; }
};

double l2_norm(const SpatialField& u);
double l2_norm(const SpaceTimeField& w);
double max_abs(const std::vector<cplx>& v);

SpatialField operator+(const SpatialField& a, const SpatialField& b);
SpatialField operator-(const SpatialField& a, const SpatialField& b);
SpatialField operator*(cplx c, const SpatialField& a);
SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator*(cplx c, const SpaceTimeField& a);

// Fourier transform of the complex conjugate of the underlying function:
// w_hat(zeta) -> conj(w_hat(-zeta)) with indices reflected modulo the lattice.
SpatialField conjugate(const SpatialField& u);
SpaceTimeField conjugate(const SpaceTimeField& w);

}  // namespace zlab
