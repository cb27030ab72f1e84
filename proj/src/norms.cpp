#include "zlab/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"
#include "zlab/simd.hpp"

namespace zlab {

NormSpec::NormSpec(Flavor f, double s, double bb, double pp) : flavor(f), sigma(s), b(bb), p(pp) {
  if (!(p == 1.0 || p == 2.0 || std::isinf(p)))
    throw std::invalid_argument("NormSpec: p must be 1, 2 or infinity");
}

namespace {

std::vector<double> sobolev_weights(const FrequencyGrid& g, double s, bool homogeneous) {
  std::vector<double> w(g.size());
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      double v;
      if (homogeneous)
        v = r2 == 0.0 ? 0.0 : std::pow(r2, s);
      else
        v = std::pow(1.0 + r2, s);
      w[g.index(i1, i2)] = v;
    }
  return w;
}

}  // namespace

double sobolev_norm(const SpatialField& u, double s) {
  const auto w = sobolev_weights(u.grid, s, false);
  const double acc = simd::active().weighted_abs2_sum(u.values.data(), w.data(), w.size());
  return std::sqrt(acc) * u.grid.dxi();
}

double homogeneous_sobolev_norm(const SpatialField& u, double s) {
  const auto w = sobolev_weights(u.grid, s, true);
  const double acc = simd::active().weighted_abs2_sum(u.values.data(), w.data(), w.size());
  return std::sqrt(acc) * u.grid.dxi();
}

namespace {

// Nonzero dyadic pieces at value r: at most two consecutive bands.
int dyadic_pieces(const std::vector<double>& bands, double r, int* idx, double* val) {
  int count = 0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double N = bands[i];
    if (N >= 2.0 && (std::fabs(r) <= N / 2.0 || std::fabs(r) >= 2.0 * N)) continue;
    if (N == 1.0 && std::fabs(r) >= 2.0) continue;
    const double m = psi_N(N, r);
    if (m != 0.0) {
      idx[count] = static_cast<int>(i);
      val[count] = m;
      if (++count == 2) break;
    }
  }
  return count;
}

}  // namespace

BlockTable block_table(const SpaceTimeField& w, Flavor f) {
  const auto& g = w.grid;
  BlockTable t;
  t.top_N = top_dyadic_band(g.spatial);
  t.top_L = top_modulation_band(g, f);
  t.N = dyadic_up_to(t.top_N);
  t.L = dyadic_up_to(t.top_L);
  t.mass_sq.assign(t.N.size() * t.L.size(), 0.0);
  const double vol = g.cell_volume();
  int in[2], il[2];
  double vn[2], vl[2];
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2) {
      const double r = std::hypot(g.spatial.xi(i1), g.spatial.xi(i2));
      const int cn = dyadic_pieces(t.N, r, in, vn);
      for (int it = 0; it < g.n_t; ++it) {
        const double a = std::norm(w.at(i1, i2, it));
        if (a == 0.0) continue;
        const int cl = dyadic_pieces(t.L, modulation(f, g.tau(it), r), il, vl);
        for (int p = 0; p < cn; ++p)
          for (int q = 0; q < cl; ++q)
            t.mass_sq[in[p] * t.L.size() + il[q]] += vn[p] * vn[p] * vl[q] * vl[q] * a * vol;
      }
    }
  return t;
}

double bourgain_norm(const BlockTable& t, double sigma, double b, double p) {
  double total = 0.0;
  for (std::size_t iN = 0; iN < t.N.size(); ++iN) {
    double inner_sq;
    if (std::isinf(p)) {
      double m = 0.0;
      for (std::size_t iL = 0; iL < t.L.size(); ++iL)
        m = std::max(m, std::pow(t.L[iL], 2.0 * b) * t.at(iN, iL));
      inner_sq = m;
    } else {
      double s = 0.0;
      for (std::size_t iL = 0; iL < t.L.size(); ++iL)
        s += std::pow(t.L[iL], p * b) * std::pow(t.at(iN, iL), p / 2.0);
      inner_sq = std::pow(s, 2.0 / p);
    }
    total += std::pow(t.N[iN], 2.0 * sigma) * inner_sq;
  }
  return std::sqrt(total);
}

double bourgain_norm(const SpaceTimeField& w, const NormSpec& spec) {
  return bourgain_norm(block_table(w, spec.flavor), spec.sigma, spec.b, spec.p);
}

double sup_time_sobolev(const SpaceTimeField& w, double s) {
  const auto& g = w.grid;
  const int nt = g.n_t;
  Fft fft({nt});
  std::vector<double> sums(nt, 0.0);
  std::vector<cplx> line(nt);
  const double scale = g.dtau() / std::sqrt(2.0 * kPi);
  for (int i1 = 0; i1 < g.spatial.n; ++i1)
    for (int i2 = 0; i2 < g.spatial.n; ++i2) {
      const double r2 = g.spatial.xi(i1) * g.spatial.xi(i1) + g.spatial.xi(i2) * g.spatial.xi(i2);
      const double weight = std::pow(1.0 + r2, s);
      for (int it = 0; it < nt; ++it) line[it] = w.at(i1, i2, it);
      // u_hat(t, xi) = (2 pi)^{-1/2} sum_tau w_hat(xi, tau) e^{i t tau} dtau at t = k T_w / n_t
      fft.backward(line.data());
      for (int k = 0; k < nt; ++k) sums[k] += weight * std::norm(line[k] * scale);
    }
  double best = 0.0;
  for (double v : sums) best = std::max(best, v);
  return std::sqrt(best) * g.spatial.dxi();
}

namespace {
double hermitian_defect(const SpatialField& u) {
  const SpatialField c = conjugate(u);
  double d = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) d = std::max(d, std::abs(u.values[i] - c.values[i]));
  return d;
}
}  // namespace

void validate_triple(const DataTriple& d) {
  if (!(d.u0.grid == d.n0.grid) || !(d.u0.grid == d.n1.grid))
    throw std::invalid_argument("DataTriple: components live on different grids");
  const double scale = std::max({1.0, max_abs(d.n0.values), max_abs(d.n1.values)});
  if (hermitian_defect(d.n0) > 1e-12 * scale || hermitian_defect(d.n1) > 1e-12 * scale)
    throw std::invalid_argument("DataTriple: wave components must be real-valued");
}

ProductNorm product_norm(const DataTriple& d, double k, double l) {
  validate_triple(d);
  const double a = sobolev_norm(d.u0, k), b = sobolev_norm(d.n0, l), c = sobolev_norm(d.n1, l - 1.0);
  return {std::sqrt(a * a + b * b + c * c), sobolev_norm(d.u0, 0.0)};
}

void reconstruct_wave(const SpatialField& v, double lambda, SpatialField& n, SpatialField& dtn) {
  const auto& g = v.grid;
  n = SpatialField(g);
  dtn = SpatialField(g);
  const int sz = g.n;
  for (int i1 = 0; i1 < sz; ++i1)
    for (int i2 = 0; i2 < sz; ++i2) {
      const cplx a = v.at(i1, i2);
      const cplx b = std::conj(v.at(slot_of(-freq_index(i1, sz), sz), slot_of(-freq_index(i2, sz), sz)));
      const double r2 = g.xi(i1) * g.xi(i1) + g.xi(i2) * g.xi(i2);
      // Re v has coefficients (a + b) / 2, Im v has (a - b) / (2i)
      n.at(i1, i2) = 0.5 * (a + b);
      dtn.at(i1, i2) = wave_symbol(lambda, r2) * (a - b) / cplx(0.0, 2.0);
    }
}

double xkl_trajectory_norm(const Trajectory& traj, double k, double l) {
  if (traj.snapshots.empty()) throw std::invalid_argument("xkl_trajectory_norm: empty trajectory");
  double su = 0.0, sn = 0.0, sd = 0.0;
  SpatialField n, dtn;
  for (const auto& s : traj.snapshots) {
    reconstruct_wave(s.v, traj.config.wave_speed, n, dtn);
    su = std::max(su, sobolev_norm(s.u, k));
    sn = std::max(sn, sobolev_norm(n, l));
    sd = std::max(sd, sobolev_norm(dtn, l - 1.0));
  }
  return std::sqrt(su * su + sn * sn + sd * sd);
}

}  // namespace zlab
