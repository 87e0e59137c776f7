#include "nlslab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

double TorusGeometry::period_scale(int axis) const {
  return axis == 0 ? lambda : gamma.at(axis - 1) * lambda;
}

double TorusGeometry::side_length(int axis) const {
  return 2.0 * std::numbers::pi * period_scale(axis);
}

double TorusGeometry::dual_spacing(int axis) const { return 1.0 / period_scale(axis); }

double TorusGeometry::weight() const {
  double w = 1.0;
  for (int a = 0; a < dimension; ++a) w /= side_length(a);
  return w;
}

bool TorusGeometry::operator==(const TorusGeometry& o) const {
  return dimension == o.dimension && gamma == o.gamma && lambda == o.lambda;
}

TorusGeometry build_geometry(int d, std::vector<double> gamma, double lambda) {
  if (d != 1 && d != 2) throw ValidationError("dimension", "must be 1 or 2, got " + std::to_string(d));
  if (static_cast<int>(gamma.size()) != d - 1)
    throw ValidationError("gamma", "expected " + std::to_string(d - 1) + " entries");
  for (double g : gamma)
    if (!(g > 0.5 && g <= 1.0))
      throw ValidationError("gamma", "value " + std::to_string(g) + " outside (1/2, 1]");
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    throw ValidationError("lambda", "must be a finite real >= 1");
  TorusGeometry g;
  g.dimension = d;
  g.gamma = std::move(gamma);
  g.lambda = lambda;
  return g;
}

}  // namespace nlslab
