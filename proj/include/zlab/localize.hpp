#pragma once

#include <vector>

namespace zlab {

struct LocalizeReport {
  double N1 = 0.0;
  double A = 0.0;
  double k_offset = 0.0;
  long long j_min = 0;            // intervals I_j = [(j - 1/2)/A, (j + 1/2)/A)
  std::vector<long long> k_of_j;  // k(j) for j = j_min, j_min + 1, ...
  long long pairs_checked = 0;
  long long containment_violations = 0;
  long long max_multiplicity = 0;
  long long worst_offset = 0;  // max |index(x) - k(j)| over checked pairs
};

// Interval map j -> k(j) = round(sqrt(j^2 + k A^2)) for the set
// {k <= x^2 - y^2 <= k + N1/A, N1/4 <= x, y <= 4 N1}, verified on a mesh.
// Every admissible mesh pair is checked against the window k(j) +- 100.
LocalizeReport localize_map(double N1, double A, double k_offset, double mesh = 1e-3);

}  // namespace zlab
