#include "zlab/fit.hpp"

#include <gsl/gsl_fit.h>

#include <cmath>
#include <stdexcept>

namespace zlab {

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  std::vector<double> x, y;
  for (const auto& [N, v] : points) {
    if (!(N > 0.0)) throw std::invalid_argument("fit_exponent: scales must be positive");
    if (!(v > 0.0)) throw std::invalid_argument("fit_exponent: values must be positive");
    x.push_back(std::log(N));
    y.push_back(std::log(v));
  }
  ExponentFit out;
  double c00, c01, c11, sumsq;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &out.intercept, &out.slope, &c00, &c01, &c11,
                 &sumsq);
  out.residual = std::sqrt(sumsq / x.size());
  return out;
}

}  // namespace zlab
