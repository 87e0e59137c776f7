#include "nlslab/dynamics.hpp"

#include <cmath>
#include <memory>

#include "nlslab/errors.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

Integrator parse_integrator(const std::string& s) {
  if (s == "strang") return Integrator::Strang;
  if (s == "rk4-galerkin" || s == "rk4") return Integrator::Rk4Galerkin;
  throw ValidationError("integrator", "expected strang or rk4-galerkin, got '" + s + "'");
}

const char* to_string(Integrator i) { return i == Integrator::Strang ? "strang" : "rk4-galerkin"; }

SpectralField galerkin_rhs(const SpectralField& u, Sign sign, bool nonlinear) {
  SpectralField out(u.geometry(), u.cutoff());
  for (std::size_t i = 0; i < u.size(); ++i) out.coeffs()[i] = cd(0.0, -u.freq_norm2(i)) * u.coeffs()[i];
  if (nonlinear) {
    const SpectralField nl = power_nonlinearity(u, nonlinearity_power(u.dim()), u.cutoff());
    const cd c(0.0, -static_cast<double>(to_int(sign)));
    for (std::size_t i = 0; i < u.size(); ++i) out.coeffs()[i] += c * nl.coeffs()[i];
  }
  return out;
}

static void axpy(SpectralField& y, const SpectralField& x, double a) {
  for (std::size_t i = 0; i < y.size(); ++i) y.coeffs()[i] += a * x.coeffs()[i];
}

SpectralField rk4_step(const SpectralField& u, double dt, Sign sign, bool nonlinear) {
  const SpectralField k1 = galerkin_rhs(u, sign, nonlinear);
  SpectralField tmp = u;
  axpy(tmp, k1, dt / 2);
  const SpectralField k2 = galerkin_rhs(tmp, sign, nonlinear);
  tmp = u;
  axpy(tmp, k2, dt / 2);
  const SpectralField k3 = galerkin_rhs(tmp, sign, nonlinear);
  tmp = u;
  axpy(tmp, k3, dt);
  const SpectralField k4 = galerkin_rhs(tmp, sign, nonlinear);
  SpectralField out = u;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.coeffs()[i] += dt / 6 * (k1.coeffs()[i] + 2.0 * k2.coeffs()[i] + 2.0 * k3.coeffs()[i] + k4.coeffs()[i]);
  return out;
}

SpectralField strang_step(const SpectralField& u, double dt, Sign sign, bool nonlinear) {
  SpectralField v = free_evolve(u, dt / 2);
  if (nonlinear) {
    PhysicalGrid g = to_physical(v, 1);
    const int q = nonlinearity_power(u.dim());
    const double c = -static_cast<double>(to_int(sign)) * dt;
    for (cd& z : g.values) {
      const double a = std::pow(std::norm(z), q);
      z *= std::polar(1.0, c * a);
    }
    v = from_physical(g, u.cutoff());
  }
  return free_evolve(v, dt / 2);
}

double default_dt(int K, double lambda, double N) {
  const double a = K > 0 ? 0.1 / (static_cast<double>(K) * K) : 0.1;
  return std::min(a, lambda / (N * 1000.0));
}

static bool finite(const SpectralField& u) {
  for (const cd& c : u.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

Trajectory evolve(const EvolutionConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ValidationError("dt", "must be > 0");
  if (!(cfg.t_end >= cfg.dt)) throw ValidationError("t_end", "must be >= dt");
  if (cfg.sample_stride < 1) throw ValidationError("sample_stride", "must be >= 1");
  if (cfg.initial.size() == 0) throw ValidationError("initial", "empty initial field");

  std::unique_ptr<ModifiedEnergy> me;
  if (cfg.monitor && cfg.monitor_level == 2)
    me = std::make_unique<ModifiedEnergy>(cfg.initial.geometry(), cfg.initial.cutoff(), *cfg.monitor, 2e8, false);

  Trajectory tr;
  const bool colloc = cfg.integrator == Integrator::Strang;
  auto record = [&](double t, const SpectralField& u) {
    tr.t.push_back(t);
    tr.u.push_back(u);
    if (!cfg.monitor) return;
    EnergyReport r;
    if (me) {
      r = me->report(u, 2, t);
    } else {
      r = modified_energy(u, 1, cfg.monitor->N, cfg.monitor->s, static_cast<Sign>(cfg.monitor->sign),
                          cfg.monitor->thresholds);
      r.t = t;
    }
    r.energy = energy(u, cfg.sign, colloc);
    tr.reports.push_back(r);
  };

  const auto steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  SpectralField u = cfg.initial;
  record(0.0, u);
  for (long s = 1; s <= steps; ++s) {
    SpectralField next = cfg.integrator == Integrator::Strang ? strang_step(u, cfg.dt, cfg.sign, cfg.nonlinear)
                                                              : rk4_step(u, cfg.dt, cfg.sign, cfg.nonlinear);
    if (!finite(next)) {
      tr.aborted = true;
      tr.diagnostics = "non-finite coefficients at step " + std::to_string(s) + " (t = " +
                       std::to_string(s * cfg.dt) + "); last good state kept";
      if (tr.t.back() != (s - 1) * cfg.dt) {
        tr.t.push_back((s - 1) * cfg.dt);
        tr.u.push_back(u);
      }
      return tr;
    }
    u = std::move(next);
    if (s % cfg.sample_stride == 0 || s == steps) record(s * cfg.dt, u);
  }
  return tr;
}

}  // namespace nlslab
