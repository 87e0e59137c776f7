#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/energies.hpp"
#include "nlslab/field.hpp"
#include "nlslab/sign.hpp"

namespace nlslab {

enum class Integrator { Strang, Rk4Galerkin };
Integrator parse_integrator(const std::string& s);
const char* to_string(Integrator i);

// -i |k|^2 u^ - sign i P_K(|u|^{4/d} u)^, with the nonlinearity alias free.
SpectralField galerkin_rhs(const SpectralField& u, Sign sign, bool nonlinear = true);
SpectralField rk4_step(const SpectralField& u, double dt, Sign sign, bool nonlinear = true);

// Half free step, pointwise phase u exp(-sign i dt |u|^{4/d}) on the native
// (2K+1)^d collocation grid, half free step. Both sub-steps are unitary on the
// lattice, so mass is conserved to round-off.
SpectralField strang_step(const SpectralField& u, double dt, Sign sign, bool nonlinear = true);

struct EvolutionConfig {
  SpectralField initial;
  Sign sign = Sign::Defocusing;
  Integrator integrator = Integrator::Rk4Galerkin;
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_stride = 1;
  bool nonlinear = true;
  // When set, each sample gets an EnergyReport for these I-energy parameters.
  std::optional<SymbolParams> monitor;
  int monitor_level = 1;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<SpectralField> u;
  std::vector<EnergyReport> reports;
  bool aborted = false;
  std::string diagnostics;
};

// Default step min(0.1 / K^2, lambda / (1000 N)).
double default_dt(int K, double lambda, double N);

Trajectory evolve(const EvolutionConfig& cfg);

}  // namespace nlslab
