#include "zlab/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace zlab {

const GaussRule& gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: q must be positive");
  static std::mutex m;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<GaussRule>();
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(q);
  rule->x.resize(q);
  rule->w.resize(q);
  for (int i = 0; i < q; ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, i, &rule->x[i], &rule->w[i], t);
  gsl_integration_glfixed_table_free(t);
  return *cache.emplace(q, std::move(rule)).first->second;
}

void composite_gauss(double a, double b, int panels, int q, std::vector<double>& x,
                     std::vector<double>& w) {
  const GaussRule& r = gauss_legendre(q);
  x.clear();
  w.clear();
  if (!(b > a) || panels < 1) return;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < q; ++i) {
      x.push_back(c + 0.5 * h * r.x[i]);
      w.push_back(0.5 * h * r.w[i]);
    }
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * M_PI * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * M_PI * u2);
}

}  // namespace zlab
