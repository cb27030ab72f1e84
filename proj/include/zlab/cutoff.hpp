#pragma once

#include <vector>

namespace zlab {

// Smooth even bump: 1 on [-1, 1], 0 outside (-2, 2), built from the
// gluing h(2-|r|) / (h(2-|r|) + h(|r|-1)) with h(s) = exp(-1/s) for s > 0.
double psi(double r);

// Dyadic piece psi(r/N) - psi(2r/N) for N >= 2 and psi itself for N = 1.
double psi_N(double N, double r);

// beta_0(s) = psi(s) / sum_k psi(s - k); beta_j(s) = beta_0(s - j).
double beta(int j, double s);

// Angular cutoff beta^A_j(theta) = beta_j(A theta / pi) + beta_{j-A}(A theta / pi),
// with the sector index taken modulo A so the family is 2 pi periodic.
double beta_A_j(int A, int j, double theta);

// Closed angular support Theta^A_j contains theta (mod 2 pi).
bool in_theta_support(int A, int j, double theta);

bool is_dyadic(double N);
// 1, 2, 4, ..., up to and including the smallest power of two >= top.
std::vector<double> dyadic_up_to(double top);

}  // namespace zlab
