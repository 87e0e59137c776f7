#pragma once

#include <json.hpp>

#include "nlslab/field.hpp"
#include "nlslab/symbol.hpp"

namespace nlslab {

// (I f)^(k) = m(k) f^(k).
SpectralField apply_I(const SpectralField& f, const SmoothingSymbol& sym);

// Mass-critical rescaling onto the torus of scale lambda (same d and gamma):
// u_mu(x) = mu^{-d/2} u(x / mu) with mu = lambda / u.lambda. Integer mode
// indices are kept; coefficients pick up mu^{d/2}.
SpectralField rescale(const SpectralField& u, double lambda);

struct ScalingPlan {
  int d = 1;
  double s = 0.5;
  double epsilon = 0.0;
  double delta = 0.0;
  double slack = 0.0;
  double N = 1.0;
  double lambda_exponent = 0.0;  // lambda = N^lambda_exponent
  double lambda = 1.0;
  double per_step_time = 0.0;    // rescaled time per local step
  double step_count_exponent = 0.0;
  double step_count = 0.0;
  double rescaled_horizon = 0.0;
  double total_existence_exponent = 0.0;      // nominal, with the "-" losses dropped
  double effective_existence_exponent = 0.0;  // includes epsilon and slack
  double total_time = 0.0;                    // N^effective exponent, original scale
  bool global_iterable = false;               // nominal exponent > 0

  nlohmann::json to_json() const;
};

struct BudgetOptions {
  double epsilon = 0.01;  // 1d only
  double delta = 0.1;     // 2d only
  double slack = 0.0;     // stands in for the unquantified "-" losses
};

ScalingPlan gwp_budget(int d, double s, double N, const BudgetOptions& opt = {});
// Nominal exponent 3 - 1/s (d = 1) or 5/2 - 3/(2s) (d = 2).
double existence_exponent(int d, double s);
// Root in (0, 1) of existence_exponent(d, .) by bisection.
double existence_zero_crossing(int d);

}  // namespace nlslab
