#pragma once

#include <json.hpp>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

// Radial smoothing symbol: 1 for |xi| <= N, (N/|xi|)^alpha for |xi| >= 2N.
// In between, with t = log2(|xi|/N), m = exp(-alpha ln2 h(t)) where h is a
// C^9 monotone ramp from h(0) = 0 to h(1) = 1 with h'(1) = 1.
struct SmoothingSymbol {
  double N = 1.0;
  double alpha = 0.0;
};

SmoothingSymbol make_symbol(double N, double alpha);

// Largest alpha for which |xi| m(xi) is nondecreasing (1 / max h').
double monotone_alpha_limit();

// The ramp h on [0, 1] (extended by 0 below and by t above).
double transition_ramp(double t);
double m_value(double r, const SmoothingSymbol& sym);
inline double m_value(const Vec2& xi, const SmoothingSymbol& sym) {
  return m_value(std::hypot(xi[0], xi[1]), sym);
}

// Taylor coefficients c_0..c_order of r -> m(r + e) at e = 0.
std::vector<double> m_taylor(double r, const SmoothingSymbol& sym, int order);

struct SymbolSelfCheck {
  int order = 8;
  std::vector<double> grid;       // sampled radii in units of N
  std::vector<double> constants;  // C_a = max |d^a m| r^a / m over the grid, a = 0..order
  double max_constant = 0.0;
  nlohmann::json to_json() const;
};

// Derivative bounds on the transition annulus [N, 2N] (radial derivatives).
SymbolSelfCheck symbol_self_check(const SmoothingSymbol& sym, int order = 8, int grid_points = 2001);

}  // namespace nlslab
