#include "zlab/besov.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/cutoff.hpp"
#include "zlab/fft.hpp"

namespace zlab {

TimeSeries1D::TimeSeries1D(double dt_, std::vector<cplx> v)
    : dt(dt_), t0(-static_cast<double>(v.size() / 2) * dt_), values(std::move(v)) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeSeries1D: dt must be positive");
}

TimeSeries1D::TimeSeries1D(double dt_, double t0_, std::vector<cplx> v)
    : dt(dt_), t0(t0_), values(std::move(v)) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeSeries1D: dt must be positive");
}

double l2_norm(const TimeSeries1D& g) {
  double acc = 0.0;
  for (const auto& z : g.values) acc += std::norm(z);
  return std::sqrt(acc * g.dt);
}

namespace {

// Fourier coefficients g_hat(tau_k) = (2 pi)^{-1/2} sum_j g_j e^{-i tau_k t_j} dt,
// tau_k on the lattice 2 pi / (n dt). The origin phase does not affect |g_hat|.
std::vector<cplx> spectrum(const TimeSeries1D& g, double& dtau) {
  const int n = static_cast<int>(g.values.size());
  if (n < 2) throw std::invalid_argument("time series too short");
  std::vector<cplx> a = g.values;
  Fft fft({n});
  fft.forward(a.data());
  const double scale = g.dt / std::sqrt(2.0 * kPi);
  for (auto& z : a) z *= scale;
  dtau = 2.0 * kPi / (n * g.dt);
  return a;
}

double top_band(int n, double dtau) { return dyadic_up_to((n / 2) * dtau).back(); }

}  // namespace

DyadicProfile dyadic_profile(const TimeSeries1D& g) {
  double dtau = 0.0;
  const auto spec = spectrum(g, dtau);
  const int n = static_cast<int>(spec.size());
  DyadicProfile p;
  p.L = dyadic_up_to(top_band(n, dtau));
  p.norm.assign(p.L.size(), 0.0);
  for (std::size_t iL = 0; iL < p.L.size(); ++iL) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double m = psi_N(p.L[iL], freq_index(k, n) * dtau);
      if (m != 0.0) acc += m * m * std::norm(spec[k]);
    }
    p.norm[iL] = std::sqrt(acc * dtau);
  }
  return p;
}

double besov_norm_1d(const TimeSeries1D& g, double b, double p) {
  const auto prof = dyadic_profile(g);
  double out = 0.0;
  for (std::size_t i = 0; i < prof.L.size(); ++i) {
    const double term = std::pow(prof.L[i], b) * prof.norm[i];
    if (std::isinf(p))
      out = std::max(out, term);
    else if (p == 1.0)
      out += term;
    else
      throw std::invalid_argument("besov_norm_1d: p must be 1 or infinity");
  }
  return out;
}

TimeSeries1D cutoff_in_time(const TimeSeries1D& g, double T) {
  TimeSeries1D out = g;
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] *= psi(g.t(j) / T);
  return out;
}

NormEquivalence norm_equiv_check(const TimeSeries1D& g, double T, double b) {
  if (!(b > 0.0 && b <= 0.5)) throw std::invalid_argument("norm_equiv_check: need 0 < b <= 1/2");
  if (!(T > 0.0 && T <= 1.0)) throw std::invalid_argument("norm_equiv_check: need 0 < T <= 1");
  const TimeSeries1D h = cutoff_in_time(g, T);
  NormEquivalence r;
  r.lhs = besov_norm_1d(h, b, 1.0);

  double dtau = 0.0;
  const auto spec = spectrum(h, dtau);
  const int n = static_cast<int>(spec.size());
  const auto bands = dyadic_up_to(top_band(n, dtau));
  // P_{<= 1/T} is the sum of the pieces with L <= 1/T, i.e. psi(tau / L_low).
  double L_low = 1.0;
  while (2.0 * L_low <= 1.0 / T) L_low *= 2.0;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double m = psi(freq_index(k, n) * dtau / L_low);
    acc += m * m * std::norm(spec[k]);
  }
  r.low_norm = std::sqrt(acc * dtau);
  r.low_term = std::pow(T, -b) * r.low_norm;
  const auto prof = dyadic_profile(h);
  for (std::size_t i = 0; i < prof.L.size(); ++i)
    if (prof.L[i] > 1.0 / T) r.high_term += std::pow(prof.L[i], b) * prof.norm[i];
  r.rhs = r.low_term + r.high_term;
  return r;
}

double besov_scaling_check(const TimeSeries1D& g, double T, double b) {
  if (!(b > 0.0 && b < 0.5)) throw std::invalid_argument("besov_scaling_check: need 0 < b < 1/2");
  if (!(T > 0.0 && T <= 1.0)) throw std::invalid_argument("besov_scaling_check: need 0 < T <= 1");
  const double den = std::pow(T, 0.5 - b) * besov_norm_1d(g, 0.5, 1.0);
  if (den == 0.0) return 0.0;
  return besov_norm_1d(cutoff_in_time(g, T), b, 1.0) / den;
}

TimeSeries1D time_integral(const TimeSeries1D& g) {
  const double pos = -g.t0 / g.dt;
  const long long j0 = std::llround(pos);
  if (std::fabs(pos - static_cast<double>(j0)) > 1e-9 || j0 < 0 ||
      j0 >= static_cast<long long>(g.values.size()))
    throw std::invalid_argument("time_integral: t = 0 must be a sample point");
  TimeSeries1D out = g;
  const std::size_t n = g.values.size();
  out.values[j0] = 0.0;
  for (std::size_t j = j0 + 1; j < n; ++j)
    out.values[j] = out.values[j - 1] + 0.5 * g.dt * (g.values[j - 1] + g.values[j]);
  for (long long j = j0 - 1; j >= 0; --j)
    out.values[j] = out.values[j + 1] - 0.5 * g.dt * (g.values[j + 1] + g.values[j]);
  return out;
}

double besov_duhamel_check(const TimeSeries1D& g, double T) {
  if (!(T > 0.0 && T <= 1.0)) throw std::invalid_argument("besov_duhamel_check: need 0 < T <= 1");
  const double rhs = besov_norm_1d(g, -5.0 / 12.0, INFINITY);
  if (rhs == 0.0) return 0.0;
  const double lhs = besov_norm_1d(cutoff_in_time(time_integral(g), T), 0.5, 1.0);
  return lhs / (std::pow(T, 1.0 / 12.0) * rhs);
}

}  // namespace zlab
