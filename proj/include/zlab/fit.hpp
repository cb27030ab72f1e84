#pragma once

#include <utility>
#include <vector>

namespace zlab {

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of the log residuals
};

// Least-squares fit of log(value) = slope * log(N) + intercept.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace zlab
