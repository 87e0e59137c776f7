#include "nlslab/scaling.hpp"

#include <cmath>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

SpectralField apply_I(const SpectralField& f, const SmoothingSymbol& sym) {
  SpectralField out = f;
  for (std::size_t i = 0; i < f.size(); ++i) out.coeffs()[i] *= m_value(std::sqrt(f.freq_norm2(i)), sym);
  return out;
}

SpectralField rescale(const SpectralField& u, double lambda) {
  const auto& g0 = u.geometry();
  const TorusGeometry g1 = build_geometry(g0.dimension, g0.gamma, lambda);
  const double mu = lambda / g0.lambda;
  const double c = std::pow(mu, 0.5 * g0.dimension);
  SpectralField out(g1, u.cutoff());
  for (std::size_t i = 0; i < u.size(); ++i) out.coeffs()[i] = c * u.coeffs()[i];
  return out;
}

double existence_exponent(int d, double s) {
  if (d == 1) return 3.0 - 1.0 / s;
  if (d == 2) return 2.5 - 1.5 / s;
  throw ValidationError("d", "must be 1 or 2");
}

double existence_zero_crossing(int d) {
  double lo = 1e-6, hi = 1.0 - 1e-12;
  if (existence_exponent(d, lo) >= 0 || existence_exponent(d, hi) <= 0)
    throw NumericalError("no sign change of the existence exponent on (0, 1)");
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (existence_exponent(d, mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ScalingPlan gwp_budget(int d, double s, double N, const BudgetOptions& opt) {
  if (d != 1 && d != 2) throw ValidationError("d", "must be 1 or 2, got " + std::to_string(d));
  if (!(s > 0.0 && s < 1.0)) throw ValidationError("s", "must lie in (0, 1)");
  if (!(N >= 1.0)) throw ValidationError("N", "must be >= 1");
  if (opt.epsilon < 0.0) throw ValidationError("epsilon", "must be >= 0");
  if (d == 2 && !(opt.delta > 0.0)) throw ValidationError("delta", "must be > 0");

  ScalingPlan p;
  p.d = d;
  p.s = s;
  p.N = N;
  p.slack = opt.slack;
  p.total_existence_exponent = existence_exponent(d, s);
  if (d == 1) {
    // local steps of length lambda / N; energy increment N^{-3+} per step
    p.epsilon = opt.epsilon;
    p.lambda_exponent = (1.0 - s) / s + opt.epsilon;
    p.lambda = std::pow(N, p.lambda_exponent);
    p.per_step_time = p.lambda / N;
    p.step_count_exponent = 3.0 - opt.slack;
    p.step_count = std::pow(N, p.step_count_exponent);
    p.rescaled_horizon = p.step_count * p.per_step_time;
    p.effective_existence_exponent = p.total_existence_exponent - opt.epsilon - opt.slack;
  } else {
    // local steps of length lambda^{-delta}; rescaled horizon N^{1-} lambda^{1/2}
    p.delta = opt.delta;
    p.lambda_exponent = (1.0 - s) / s;
    p.lambda = std::pow(N, p.lambda_exponent);
    p.per_step_time = std::pow(p.lambda, -opt.delta);
    p.rescaled_horizon = std::pow(N, 1.0 - opt.slack) * std::sqrt(p.lambda);
    p.step_count_exponent = 1.0 - opt.slack + (0.5 + opt.delta) * p.lambda_exponent;
    p.step_count = std::pow(N, p.step_count_exponent);
    p.effective_existence_exponent = p.total_existence_exponent - opt.slack;
  }
  p.total_time = p.rescaled_horizon / (p.lambda * p.lambda);
  p.global_iterable = p.total_existence_exponent > 0.0;
  return p;
}

nlohmann::json ScalingPlan::to_json() const {
  return {{"d", d},
          {"s", s},
          {"epsilon", epsilon},
          {"delta", delta},
          {"slack", slack},
          {"N", N},
          {"lambda_exponent", lambda_exponent},
          {"lambda", lambda},
          {"per_step_time", per_step_time},
          {"step_count_exponent", step_count_exponent},
          {"step_count", step_count},
          {"rescaled_horizon", rescaled_horizon},
          {"total_existence_exponent", total_existence_exponent},
          {"effective_existence_exponent", effective_existence_exponent},
          {"total_time", total_time},
          {"global_iterable", global_iterable}};
}

}  // namespace nlslab
