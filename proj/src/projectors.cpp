#include "zlab/projectors.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "zlab/cutoff.hpp"

namespace zlab {

Flavor parse_flavor(const std::string& name) {
  if (name == "S") return Flavor::S;
  if (name == "W+" || name == "Wplus") return Flavor::WPlus;
  if (name == "W-" || name == "Wminus") return Flavor::WMinus;
  if (name == "W" || name == "Wfull") return Flavor::WFull;
  throw std::invalid_argument("unknown flavor '" + name + "'");
}

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::S: return "S";
    case Flavor::WPlus: return "W+";
    case Flavor::WMinus: return "W-";
    case Flavor::WFull: return "Wfull";
  }
  return "?";
}

double modulation(Flavor f, double tau, double rxi) {
  switch (f) {
    case Flavor::S: return tau + rxi * rxi;
    case Flavor::WPlus: return tau + rxi;
    case Flavor::WMinus: return tau - rxi;
    case Flavor::WFull: return std::fabs(tau) - rxi;
  }
  throw std::invalid_argument("unknown flavor");
}

Flavor conjugate_flavor(Flavor f) {
  if (f == Flavor::WPlus) return Flavor::WMinus;
  if (f == Flavor::WMinus) return Flavor::WPlus;
  return f;
}

AngularSector::AngularSector(int A_, int j_) : A(A_), j(j_) {
  if (A < 1 || !is_dyadic(A)) throw std::invalid_argument("AngularSector: A must be dyadic");
  if (j < 0 || j >= A) throw std::invalid_argument("AngularSector: j out of range [0, A)");
}

double top_dyadic_band(const FrequencyGrid& g) { return dyadic_up_to(g.max_radius()).back(); }

double top_modulation_band(const SpaceTimeGrid& g, Flavor f) {
  const double tmax = (g.n_t / 2) * g.dtau();
  const double rmax = g.spatial.max_radius();
  double m = 0.0;
  switch (f) {
    case Flavor::S: m = tmax + rmax * rmax; break;
    case Flavor::WPlus:
    case Flavor::WMinus:
    case Flavor::WFull: m = tmax + rmax; break;
  }
  return dyadic_up_to(m).back();
}

namespace {

void check_band(const FrequencyGrid& g, double N) {
  if (!is_dyadic(N)) throw std::invalid_argument("project_dyadic: N must be a power of two");
  if (N > top_dyadic_band(g))
    throw std::invalid_argument("project_dyadic: band N=" + std::to_string(N) +
                                " lies above the grid's Nyquist range");
}

}  // namespace

SpatialField project_dyadic(const SpatialField& u, double N) {
  const auto& g = u.grid;
  check_band(g, N);
  SpatialField out(g);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double m = psi_N(N, std::hypot(g.xi(i1), g.xi(i2)));
      out.at(i1, i2) = m == 0.0 ? cplx(0.0) : m * u.at(i1, i2);
    }
  return out;
}

SpaceTimeField project_dyadic(const SpaceTimeField& w, double N) {
  const auto& g = w.grid;
  check_band(g.spatial, N);
  SpaceTimeField out(g);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2) {
      const double m = psi_N(N, std::hypot(g.spatial.xi(i1), g.spatial.xi(i2)));
      if (m == 0.0) continue;
      for (int it = 0; it < g.n_t; ++it) out.at(i1, i2, it) = m * w.at(i1, i2, it);
    }
  return out;
}

SpaceTimeField project_modulation(const SpaceTimeField& w, double L, Flavor f) {
  const auto& g = w.grid;
  if (!is_dyadic(L)) throw std::invalid_argument("project_modulation: L must be a power of two");
  if (L > top_modulation_band(g, f))
    std::cerr << "warning: modulation band L=" << L << " is empty on this grid\n";
  SpaceTimeField out(g);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2) {
      const double r = std::hypot(g.spatial.xi(i1), g.spatial.xi(i2));
      for (int it = 0; it < g.n_t; ++it) {
        const double m = psi_N(L, modulation(f, g.tau(it), r));
        out.at(i1, i2, it) = m == 0.0 ? cplx(0.0) : m * w.at(i1, i2, it);
      }
    }
  return out;
}

double angular_weight(const AngularSector& s, double xi1, double xi2) {
  if (xi1 == 0.0 && xi2 == 0.0) return s.j == 0 ? 1.0 : 0.0;
  return beta_A_j(s.A, s.j, std::atan2(xi2, xi1));
}

SpatialField project_angular(const SpatialField& u, const AngularSector& s) {
  const auto& g = u.grid;
  SpatialField out(g);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) out.at(i1, i2) = angular_weight(s, g.xi(i1), g.xi(i2)) * u.at(i1, i2);
  return out;
}

SpaceTimeField project_angular(const SpaceTimeField& w, const AngularSector& s) {
  const auto& g = w.grid;
  SpaceTimeField out(g);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2) {
      const double m = angular_weight(s, g.spatial.xi(i1), g.spatial.xi(i2));
      if (m == 0.0) continue;
      for (int it = 0; it < g.n_t; ++it) out.at(i1, i2, it) = m * w.at(i1, i2, it);
    }
  return out;
}

int cyclic_distance(int a, int b, int A) {
  const int d = std::abs(a - b) % A;
  return std::min(d, A - d);
}

std::vector<WhitneyTile> whitney_tiles(int M) {
  if (M < 64 || !is_dyadic(M)) throw std::invalid_argument("whitney_tiles: M must be dyadic and >= 64");
  std::vector<WhitneyTile> out;
  for (int j1 = 0; j1 < M; ++j1)
    for (int j2 = 0; j2 < M; ++j2)
      if (cyclic_distance(j1, j2, M) <= 16) out.push_back({M, j1, j2, true});
  for (int A = 64; A <= M; A *= 2)
    for (int j1 = 0; j1 < A; ++j1)
      for (int j2 = 0; j2 < A; ++j2) {
        const int d = cyclic_distance(j1, j2, A);
        if (d >= 16 && d <= 32) out.push_back({A, j1, j2, false});
      }
  return out;
}

int sector_of(int A, double theta) {
  const double s = A * theta / kPi;
  const long long k = std::llround(s);
  return static_cast<int>(((k % A) + A) % A);
}

}  // namespace zlab
