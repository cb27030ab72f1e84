#include "zlab/localize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace zlab {

LocalizeReport localize_map(double N1, double A, double k_offset, double mesh) {
  if (!(N1 >= 1.0)) throw std::invalid_argument("localize_map: requires N1 >= 1");
  if (!(A >= 1.0)) throw std::invalid_argument("localize_map: requires A >= 1");
  if (!(4.0 * A <= N1)) throw std::invalid_argument("localize_map: requires A << N1 (4A <= N1)");
  if (!(4.0 * std::fabs(k_offset) <= N1 * N1))
    throw std::invalid_argument("localize_map: requires |k| << N1^2 (4|k| <= N1^2)");
  if (!(mesh > 0.0)) throw std::invalid_argument("localize_map: mesh must be positive");

  LocalizeReport rep;
  rep.N1 = N1;
  rep.A = A;
  rep.k_offset = k_offset;
  const double lo = N1 / 4.0, hi = 4.0 * N1;
  auto index_of = [A](double x) { return static_cast<long long>(std::floor(A * x + 0.5)); };
  rep.j_min = index_of(lo);
  const long long j_max = index_of(hi);
  std::map<long long, long long> hits;
  for (long long j = rep.j_min; j <= j_max; ++j) {
    const double arg = std::max(0.0, static_cast<double>(j) * j + k_offset * A * A);
    const auto k = static_cast<long long>(std::llround(std::sqrt(arg)));
    rep.k_of_j.push_back(k);
    rep.max_multiplicity = std::max(rep.max_multiplicity, ++hits[k]);
  }

  const double width = N1 / A;
  const long long ny = static_cast<long long>(std::floor((hi - lo) / mesh + 1e-9));
  for (long long iy = 0; iy <= ny; ++iy) {
    const double y = lo + iy * mesh;
    const long long k = rep.k_of_j[index_of(y) - rep.j_min];
    const double x2_lo = y * y + k_offset, x2_hi = x2_lo + width;
    if (x2_hi < 0.0) continue;
    const double xa = std::max(lo, std::sqrt(std::max(0.0, x2_lo)));
    const double xb = std::min(hi, std::sqrt(x2_hi));
    if (xa > xb) continue;
    // mesh points x = lo + m * mesh with xa <= x <= xb
    long long m = static_cast<long long>(std::ceil((xa - lo) / mesh - 1e-9));
    for (;; ++m) {
      const double x = lo + m * mesh;
      if (x > xb) break;
      const double d = x * x - y * y;
      if (d < k_offset || d > k_offset + width) continue;
      ++rep.pairs_checked;
      const long long off = std::llabs(index_of(x) - k);
      rep.worst_offset = std::max(rep.worst_offset, off);
      if (off > 100) ++rep.containment_violations;
    }
  }
  return rep;
}

}  // namespace zlab
