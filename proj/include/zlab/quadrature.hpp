#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace zlab {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule with q points, cached.
const GaussRule& gauss_legendre(int q);

// Composite Gauss-Legendre nodes/weights over [a, b] with `panels` equal panels.
void composite_gauss(double a, double b, int panels, int q, std::vector<double>& x,
                     std::vector<double>& w);

// Deterministic generator: mt19937_64 with explicit uniform and normal
// transforms so draws do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace zlab
