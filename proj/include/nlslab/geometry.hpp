#pragma once

#include <vector>

namespace nlslab {

// T^d_lambda = T_lambda x T_{gamma lambda}; axis a has period 2*pi*period_scale(a).
struct TorusGeometry {
  int dimension = 1;
  std::vector<double> gamma;
  double lambda = 1.0;

  double period_scale(int axis) const;
  double side_length(int axis) const;
  double dual_spacing(int axis) const;
  // Normalized counting-measure weight prod_a 1/(2 pi period_scale(a)).
  double weight() const;
  double volume() const { return 1.0 / weight(); }

  bool operator==(const TorusGeometry& o) const;
  bool operator!=(const TorusGeometry& o) const { return !(*this == o); }
};

TorusGeometry build_geometry(int d, std::vector<double> gamma, double lambda);

inline TorusGeometry unit_circle() { return build_geometry(1, {}, 1.0); }

}  // namespace nlslab
