#include "zlab/cutoff.hpp"

#include <cmath>
#include <stdexcept>

#include "zlab/grid.hpp"

namespace zlab {

namespace {
double h(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
}  // namespace

double psi(double r) {
  const double a = std::fabs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double p = h(2.0 - a);
  return p / (p + h(a - 1.0));
}

double psi_N(double N, double r) {
  if (N == 1.0) return psi(r);
  if (N < 2.0) throw std::invalid_argument("psi_N: N must be 1 or >= 2");
  return psi(r / N) - psi(2.0 * r / N);
}

namespace {
double beta0(double s) {
  const double f = std::floor(s);
  double denom = 0.0;
  for (int k = -2; k <= 3; ++k) denom += psi(s - (f + k));
  return psi(s) / denom;
}
}  // namespace

double beta(int j, double s) { return beta0(s - j); }

double beta_A_j(int A, int j, double theta) {
  if (A < 1) throw std::invalid_argument("beta_A_j: A must be >= 1");
  if (j < 0 || j >= A) throw std::invalid_argument("beta_A_j: sector index out of range");
  // Map theta into (-pi, pi].
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  const double s = A * t / kPi;
  const long long f = static_cast<long long>(std::floor(s));
  double acc = 0.0;
  for (long long q = f - 2; q <= f + 3; ++q) {
    const long long r = ((q % A) + A) % A;
    if (r == j) acc += beta0(s - static_cast<double>(q));
  }
  return acc;
}

bool in_theta_support(int A, int j, double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  const double s = A * t / kPi;  // in [-A, A]
  // distance to the nearest integer congruent to j modulo A
  const double d = std::remainder(s - j, static_cast<double>(A));
  return std::fabs(d) <= 2.0;
}

bool is_dyadic(double N) {
  if (!(N >= 1.0) || !std::isfinite(N)) return false;
  int e = 0;
  const double m = std::frexp(N, &e);
  return m == 0.5;
}

std::vector<double> dyadic_up_to(double top) {
  std::vector<double> out{1.0};
  while (out.back() < top) out.push_back(out.back() * 2.0);
  return out;
}

}  // namespace zlab
