#pragma once

#include <cstdint>

#include "zlab/grid.hpp"
#include "zlab/projectors.hpp"

namespace zlab {

// I(f, g1, g2) = sum f(z1 - z2) g1(z1) g2(z2) vol^2 over lattice points z1, z2.
// f is taken as zero where z1 - z2 leaves its lattice (no wrap-around).
// Computed as a zero-padded FFT correlation of g1 and g2.
cplx trilinear_I(const SpaceTimeField& f, const SpaceTimeField& g1, const SpaceTimeField& g2);

// Complex Gaussian coefficients on the open support of psi_N(|xi|) psi_L(modulation),
// normalized to unit L2. Throws when the band has no lattice points.
SpaceTimeField make_dyadic_random_field(const SpaceTimeGrid& g, double N, double L, Flavor f,
                                        std::uint64_t seed);

}  // namespace zlab
