#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/classify.hpp"
#include "nlslab/dynamics.hpp"
#include "nlslab/random_data.hpp"
#include "nlslab/sign.hpp"

namespace nlslab {

struct AlmostConservationConfig {
  int d = 1;
  double lambda = 1.0;
  int K = 0;                 // lattice cutoff per axis; 0 picks 24 in 1d and 12 in 2d
  double s = 0.4;
  double mass = kSmallMass;
  std::vector<double> N{4, 8, 16};
  double t_end = 0.25;
  double dt = 0.0;           // 0 picks default_dt(K, lambda, max N) / 4
  int samples = 50;          // monitored samples along the trajectory
  long max_steps = 200000;   // horizon cap; a capped row is flagged
  std::uint64_t seed = 7;
  Integrator integrator = Integrator::Rk4Galerkin;
  Sign sign = Sign::Defocusing;
  Thresholds thresholds;

  int cutoff() const { return K > 0 ? K : (d == 1 ? 24 : 12); }
};

struct GrowthRow {
  double N = 0.0;
  double sup_inc_e1 = 0.0;     // sup_t |E_I1(t) - E_I1(0)|
  double sup_inc_e2 = 0.0;     // sup_t |E_I2(t) - E_I2(0)|
  double sup_inc_energy = 0.0; // same for the unmodified energy (integrator drift)
  double max_correction = 0.0; // sup_t |Lambda_n(sigma_tilde_n)|
  double boundary_ratio = 0.0; // sup_t |Lambda_n(sigma_tilde_n)| / ||I u(t)||_{H^1}^n
  double e_i1_0 = 0.0, e_i2_0 = 0.0;
  double t_reached = 0.0;
  bool capped = false;
  std::size_t table_entries = 0;
};

struct GrowthTable {
  AlmostConservationConfig config;
  std::vector<GrowthRow> rows;
  double dt = 0.0;
  bool fitted = false;
  double decay_exponent = 0.0;  // p in sup_inc_e2 ~ N^{-p}
  bool monotone_e2 = false;     // sup_inc_e2 strictly decreasing along the N grid
  bool e2_below_e1 = false;     // at the largest N

  std::string csv() const;
  nlohmann::json to_json() const;
};

// One trajectory of fixed small-mass H^s data, monitored with E_I1 and E_I2
// for every N in the grid.
GrowthTable run_almost_conservation(const AlmostConservationConfig& cfg);

// ||f||_{H^1}^2 = ||f||_2^2 + ||grad f||_2^2.
double h1_norm2(const SpectralField& f);

}  // namespace nlslab
