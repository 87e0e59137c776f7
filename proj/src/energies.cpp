#include "nlslab/energies.hpp"

#include <cmath>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/scaling.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

Sign parse_sign(const std::string& s) {
  if (s == "defocusing" || s == "+" || s == "+1" || s == "1") return Sign::Defocusing;
  if (s == "focusing" || s == "-" || s == "-1") return Sign::Focusing;
  throw ValidationError("sign", "expected focusing or defocusing, got '" + s + "'");
}

double mass(const SpectralField& f) {
  const double n = norm_l2(f);
  return n * n;
}

double kinetic_energy(const SpectralField& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f.freq_norm2(i) * std::norm(f.coeffs()[i]);
  return 0.5 * f.geometry().weight() * acc;
}

double potential_energy(const SpectralField& f, bool collocation) {
  const int d = f.dim();
  const int p = 2 + 4 / d;
  const double c = static_cast<double>(d) / (4.0 + 2.0 * d);
  return c * quadrature_lp(to_physical(f, collocation ? 1 : dealias_factor(p)), p);
}

double energy(const SpectralField& f, Sign sign, bool collocation) {
  return kinetic_energy(f) + to_int(sign) * potential_energy(f, collocation);
}

ModifiedEnergy::ModifiedEnergy(const TorusGeometry& g, std::array<int, 2> K, const SymbolParams& p,
                               double max_entries, bool resonant_tables)
    : g_(g), K_(K), p_(p), n_(g.dimension == 1 ? 6 : 4) {
  if (p.d != g.dimension) throw ValidationError("d", "symbol dimension differs from the geometry");
  if (g.dimension == 1) K_[1] = 0;
  const SymbolParams q = p;
  const auto ms = p.smoothing();
  const int n = n_;
  tilde_ = std::make_unique<SymmetricTable>(g, K_, n, [q](const Vec2* k) { return sigma_tilde(k, q).real(); },
                                            max_entries);
  // m_bar is purely imaginary; the table stores its imaginary part.
  if (!resonant_tables) return;
  bar_ = std::make_unique<SymmetricTable>(g, K_, n, [q](const Vec2* k) { return m_bar(k, q).imag(); }, max_entries);
  nested_ = std::make_unique<SymmetricTable>(
      g, K_, n,
      [q, ms, n](const Vec2* k) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= m_value(std::hypot(k[i][0], k[i][1]), ms);
        return prod / n + q.sign * sigma_tilde(k, q).real();
      },
      max_entries);
}

std::size_t ModifiedEnergy::table_entries() const {
  return tilde_->entries() + (bar_ ? bar_->entries() + nested_->entries() : 0);
}

double ModifiedEnergy::e_i1(const SpectralField& u) const {
  const auto s2 = make_symbol_spec(SymbolName::Sigma2, p_);
  const auto sn = make_symbol_spec(n_ == 6 ? SymbolName::Sigma6 : SymbolName::Sigma4, p_);
  const cd kin = lambda_eval(s2, u, LambdaStrategy::Direct);
  const cd pot = lambda_eval(sn, u, LambdaStrategy::Physical);
  return (kin + static_cast<double>(p_.sign) * pot).real();
}

double ModifiedEnergy::e_i1_direct(const SpectralField& u) const {
  return energy(apply_I(u, p_.smoothing()), static_cast<Sign>(p_.sign));
}

cd ModifiedEnergy::correction(const SpectralField& u) const { return tilde_->contract(u); }

cd ModifiedEnergy::lambda_mbar(const SpectralField& u) const {
  if (!bar_) throw ValidationError("tables", "resonant tables were not built");
  return cd(0.0, 1.0) * bar_->contract(u);
}

cd ModifiedEnergy::lambda_mbar_nested(const SpectralField& u) const {
  return lambda_mbar_nested(u, power_nonlinearity(u, nonlinearity_power(u.dim()), u.cutoff()));
}

cd ModifiedEnergy::lambda_mbar_nested(const SpectralField& u, const SpectralField& h) const {
  if (!nested_) throw ValidationError("tables", "resonant tables were not built");
  return cd(0.0, 1.0) * nested_->contract_substituted(u, h);
}

EnergyReport ModifiedEnergy::report(const SpectralField& u, int level, double t) const {
  if (level != 1 && level != 2) throw ValidationError("level", "must be 1 or 2");
  EnergyReport r;
  r.t = t;
  r.sign = static_cast<Sign>(p_.sign);
  r.mass = mass(u);
  r.energy = energy(u, r.sign);
  r.e_i1 = e_i1(u);
  const double direct = e_i1_direct(u);
  const double scale = std::max({std::abs(direct), kinetic_energy(u), 1e-300});
  if (std::abs(r.e_i1 - direct) > 1e-8 * scale)
    throw ConsistencyError("E(Iu) paths disagree: " + std::to_string(r.e_i1) + " vs " + std::to_string(direct));
  r.e_i2 = r.e_i1;
  if (level == 2) {
    r.correction = correction(u).real();
    r.e_i2 = r.e_i1 + r.correction;
  }
  return r;
}

EnergyReport modified_energy(const SpectralField& f, int level, double N, double s, Sign sign, const Thresholds& th) {
  SymbolParams p;
  p.N = N;
  p.s = s;
  p.d = f.dim();
  p.sign = to_int(sign);
  p.thresholds = th;
  if (level == 1) {
    // no tables needed
    EnergyReport r;
    r.sign = sign;
    r.mass = mass(f);
    r.energy = energy(f, sign);
    const auto s2 = make_symbol_spec(SymbolName::Sigma2, p);
    const auto sn = make_symbol_spec(f.dim() == 1 ? SymbolName::Sigma6 : SymbolName::Sigma4, p);
    r.e_i1 = (lambda_eval(s2, f) + static_cast<double>(p.sign) * lambda_eval(sn, f, LambdaStrategy::Physical)).real();
    const double direct = energy(apply_I(f, p.smoothing()), sign);
    if (std::abs(r.e_i1 - direct) > 1e-8 * std::max({std::abs(direct), kinetic_energy(f), 1e-300}))
      throw ConsistencyError("E(Iu) paths disagree");
    r.e_i2 = r.e_i1;
    return r;
  }
  return ModifiedEnergy(f.geometry(), f.cutoff(), p).report(f, level);
}

std::vector<ResidualSample> energy_identity_residual(const std::vector<double>& times,
                                                     const std::vector<SpectralField>& traj,
                                                     const ModifiedEnergy& me) {
  if (times.size() != traj.size() || traj.empty()) throw ValidationError("traj", "times and samples must match");
  std::vector<ResidualSample> out(traj.size());
  std::vector<double> rate(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    auto& r = out[i];
    r.t = times[i];
    r.e_i1 = me.e_i1(traj[i]);
    r.correction = me.correction(traj[i]).real();
    r.lambda_mbar = me.lambda_mbar(traj[i]).real();
    r.lambda_mbar_nested = me.lambda_mbar_nested(traj[i]).real();
    rate[i] = r.lambda_mbar + r.lambda_mbar_nested;
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    double integral = 0.0;
    if (i > 0) {
      const auto w = simpson_weights(i + 1, times[i] - times[0]);
      for (std::size_t j = 0; j <= i; ++j) integral += w[j] * rate[j];
    }
    out[i].residual =
        out[i].e_i1 - (out[0].e_i1 - (out[i].correction - out[0].correction) + integral);
  }
  return out;
}

}  // namespace nlslab
