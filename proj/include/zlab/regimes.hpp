#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zlab/band_fields.hpp"

namespace zlab {

// Frequency, modulation and angle parameters of one interaction. For the
// bilinear cases the first factor uses (N1, L1) and the second (N2, L2); for
// the wave-Schrodinger cases the wave factor uses (N, L) or the cube.
struct TileSpec {
  double N = 1.0, N1 = 1.0, N2 = 1.0;
  double L = 1.0, L1 = 1.0, L2 = 1.0;
  std::optional<int> A;
  std::optional<int> j1, j2;
  int sign = +1;
  std::optional<double> cube_side;
  std::array<double, 2> cube_center{};
};

enum class BilinearCase { SchSch, WaveSchCube, WaveSchAnnulus };
enum class Regime { TransLowMod, TransHighMod, ParallelHH, HighLow, SmallWave };

const char* to_string(BilinearCase c);
const char* to_string(Regime r);
BilinearCase parse_bilinear_case(const std::string& s);
Regime parse_regime(const std::string& s);

struct SweepResult {
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<double, double>> measured;  // (input scale, ratio)
  double fittedSlope = 0.0;                         // NaN unless >= 3 distinct scales
  double maxRatio = 0.0;
};

// Relations between dyadic scales: a ~ b within a factor 4, a << b means
// 4a <= b. Violations throw std::invalid_argument naming the inequality.
void validate_bilinear(const TileSpec& t, BilinearCase c);
void validate_regime(const TileSpec& t, Regime r);

double bilinear_rhs(const TileSpec& t, BilinearCase c);
double regime_rhs(const TileSpec& t, Regime r);

// Band-field specs for seed s (seed 0 gives flat envelopes).
std::array<BandFieldSpec, 2> bilinear_fields(const TileSpec& t, BilinearCase c, std::uint64_t seed);
std::array<BandFieldSpec, 3> regime_fields(const TileSpec& t, Regime r, std::uint64_t seed);

// Max over seeds of ||u v||_{L2} / rhs; `level` refines every quadrature.
SweepResult check_bilinear_strichartz(const TileSpec& t, BilinearCase c, const std::vector<std::uint64_t>& seeds,
                                      int level = 1);
// Max over seeds of |I(f, g1, g2)| / rhs.
SweepResult check_regime(const TileSpec& t, Regime r, const std::vector<std::uint64_t>& seeds, int level = 1);

// Lattice covering xi in [-8, 8)^2 and tau in [-24, 24); refining doubles n and n_t.
struct TrilinearGrid {
  int n = 32;
  int n_t = 32;
};

// Max over seeds of |I(v, u1, u2)| / (|u1|_{X^S_{0,5/12,1}} |u2|_{X^S_{0,5/12,1}}
// |v|_{X^{W+}_{-1/2,5/12,1}}) for random sums of Gaussian bumps placed so that the
// three fields interact. With `conjugate` the first slot is the transform of a
// conjugated wave, so its norm is taken for conj(v) in X^{W+}.
SweepResult check_trilinear_full(const std::vector<std::uint64_t>& seeds, const TrilinearGrid& grid,
                                 bool conjugate = false);

std::vector<std::uint64_t> seed_list(std::uint64_t first, int count);

}  // namespace zlab
