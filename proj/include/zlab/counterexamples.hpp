#pragma once

#include "zlab/boxes.hpp"

namespace zlab {

struct CounterexampleParams {
  double N = 16.0;
  double sigma = -1.0;  // in [-1, 0)
  double k = 0.0;
  double ell = -0.5;
  double b_prime = 0.5;
  double b1 = 0.5;
  double b2 = 0.5;
  int q = 16;
  int panels = 1;
};

// Boxes of widths N^s x N^{(1+s)/2} x N^{1+s} around the given centers.
BoxSpec counter_box(double N, double sigma, double xi1, double tau);

// ||v u||_{X^S_{k,-b'}} / (||v||_{X^{W+}_{l,b1}} ||u||_{X^S_{k,b2}}) with
// v_hat = chi_E, E at (2N+1, 0, -2N-1), and u_hat = chi_F, F at (-N, 0, -N^2).
double counterexample_c1(const CounterexampleParams& p);

// ||Delta/<grad> (u conj(w))||_{X^{W+}_{l,-b'}} / (||u||_{X^S_{k,b1}} ||w||_{X^S_{k,b2}}) with
// u_hat = chi at (N+1, 0, -(N+1)^2) and w_hat = chi at (-N, 0, -N^2).
double counterexample_c2(const CounterexampleParams& p);

// Predicted growth exponents of the two ratios.
double predicted_exponent_c1(const CounterexampleParams& p);
double predicted_exponent_c2(const CounterexampleParams& p);

struct DuhamelRatio {
  double raw = 0.0;
  double normalized = 0.0;  // raw divided by the predicted power of N
};

// Schrodinger Duhamel term of e^{it Delta} u_N * Re(e^{-it<grad>} v_N) at time t,
// restricted to the target rectangle near (N+1, 0), over ||u_N||_{H^k} ||v_N||_{H^l}.
// u_hat = chi of [-N -+ 1/N] x [-1, 1]; v_hat = chi_B + chi_{-B},
// B = [2N+1 -+ 2/N] x [-2, 2]. Predicted power N^{-l-1/2}.
DuhamelRatio duhamel_lower_bound_1(double N, double T, double k, double ell, double t, int q = 16);

// Wave Duhamel term of Delta/<grad> |e^{it Delta} u_N|^2 at time t, restricted to the
// rectangle near (2N+1, 0), over ||u_N||_{H^k}^2. u_hat = chi_{D1} + chi_{D2},
// D1 = [N+1 -+ 1/N] x [-1, 1], D2 = [-N -+ 2/N] x [-2, 2]. Predicted power N^{l-2k+1/2}.
DuhamelRatio duhamel_lower_bound_2(double N, double T, double k, double ell, double t, int q = 16);

}  // namespace zlab
