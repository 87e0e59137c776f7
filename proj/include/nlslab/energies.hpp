#pragma once

#include <memory>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/lambda.hpp"
#include "nlslab/sign.hpp"
#include "nlslab/symbols.hpp"

namespace nlslab {

struct EnergyReport {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double e_i1 = 0.0;
  double correction = 0.0;
  double e_i2 = 0.0;
  Sign sign = Sign::Defocusing;
};

double mass(const SpectralField& f);
// 1/2 ||grad u||^2 by Plancherel.
double kinetic_energy(const SpectralField& f);
// d/(4+2d) int |u|^{2+4/d}, alias free; with collocation = true the native
// (2K+1)^d grid is used instead (the Hamiltonian of the collocation scheme).
double potential_energy(const SpectralField& f, bool collocation = false);
double energy(const SpectralField& f, Sign sign, bool collocation = false);

// q with |u|^{4/d} u = |u|^{2q} u.
inline int nonlinearity_power(int d) { return d == 1 ? 2 : 1; }

// I-energies on a fixed lattice. The correction and the resonant terms are
// evaluated through symmetric tables built once for the lattice.
class ModifiedEnergy {
public:
  // Without resonant_tables only the correction table is built and the
  // lambda_mbar* members throw.
  ModifiedEnergy(const TorusGeometry& g, std::array<int, 2> K, const SymbolParams& p, double max_entries = 2e8,
                 bool resonant_tables = true);

  const SymbolParams& params() const { return p_; }
  int n() const { return n_; }
  std::size_t table_entries() const;

  // Lambda_2(sigma_2) + sign Lambda_n(sigma_n) through the Lambda layer.
  double e_i1(const SpectralField& u) const;
  // E(I u) evaluated directly.
  double e_i1_direct(const SpectralField& u) const;
  // Lambda_n(sigma_tilde_n).
  cd correction(const SpectralField& u) const;
  // Lambda_n(Mbar_n).
  cd lambda_mbar(const SpectralField& u) const;
  // Lambda_{n+p-1}(Mbar_{n+p-1}) for the truncated flow, where the collapsed
  // slot carries the projected nonlinearity.
  cd lambda_mbar_nested(const SpectralField& u) const;
  cd lambda_mbar_nested(const SpectralField& u, const SpectralField& projected_nonlinearity) const;

  // level 1 or 2; throws ConsistencyError if the two E(Iu) paths differ by more than 1e-8 relative.
  EnergyReport report(const SpectralField& u, int level, double t = 0.0) const;

private:
  TorusGeometry g_;
  std::array<int, 2> K_;
  SymbolParams p_;
  int n_;
  std::unique_ptr<SymmetricTable> tilde_, bar_, nested_;
};

// Convenience wrapper that builds the tables for one evaluation.
EnergyReport modified_energy(const SpectralField& f, int level, double N, double s, Sign sign,
                             const Thresholds& th = {});

struct ResidualSample {
  double t = 0.0;
  double e_i1 = 0.0;
  double correction = 0.0;
  double lambda_mbar = 0.0;
  double lambda_mbar_nested = 0.0;
  double residual = 0.0;
};

// r(t) = E1(t) - [E1(0) - (C(t) - C(0)) + int_0^t (Lambda(Mbar_n) + Lambda(Mbar_{n+p-1}))]
// with C = Lambda(sigma_tilde) and the integral by composite Simpson over the samples.
std::vector<ResidualSample> energy_identity_residual(const std::vector<double>& times,
                                                     const std::vector<SpectralField>& traj,
                                                     const ModifiedEnergy& me);

}  // namespace nlslab
