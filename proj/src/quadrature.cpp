#include "nlslab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/errors.hpp"

namespace nlslab {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("nodes", "must be >= 1");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace nlslab
