#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/field.hpp"

namespace nlslab {

// One Fourier mode of a free solution on the square torus of period 2 pi
// lambda: u(t, x) = sum c exp(i (k.x - |k|^2 t)) with k = n / lambda.
struct FreeMode {
  std::array<int, 2> n{0, 0};
  cd c{};
};

struct FreeWave {
  int d = 1;
  double lambda = 1.0;
  std::vector<FreeMode> modes;

  double l2_norm() const;  // ||u(0)||_{L^2(T^d_lambda)}
};

// ||u1 u2||_{L^2([0, T] x T^d_lambda)}, exact up to the Gauss-Legendre error in
// time (the spatial grid is alias-free for the product).
double bilinear_norm(const FreeWave& u1, const FreeWave& u2, double T);
// ||u||_{L^p([0, T] x T^d_lambda)} for even p.
double linear_norm(const FreeWave& u, int p, double T);

// Unit-L^2 Gaussian packet concentrated at frequency k0 (spatial width dx),
// centred at x0 at time 0, restricted to modes with k in [lo, hi].
FreeWave gaussian_packet(double lambda, double k0, double dx, double x0, double phase, double lo, double hi);

struct StrichartzConfig {
  double lambda = 64.0;
  double N = 256.0;
  std::vector<int> M{4, 8, 16, 32};
  int samples = 200;
  std::uint64_t seed = 1;
  // 2d linear L^4 rows at T = 1
  double lambda_2d = 2.0;
  std::vector<int> M_2d{2, 4};
  int samples_2d = 8;
};

struct BilinearRow {
  int M = 0;
  double lambda = 0.0, N = 0.0, T = 0.0;
  double max_norm = 0.0, mean_norm = 0.0;
  double max_l6 = 0.0;  // largest linear L^6 norm among the sampled packets
  int samples = 0;
};

struct LinearRow2d {
  int M = 0;
  double lambda = 0.0, T = 1.0;
  double max_norm = 0.0, mean_norm = 0.0;
  int samples = 0;
};

struct CalibrationRow {
  std::string name;
  double measured = 0.0, expected = 0.0;
  double rel_error() const;
};

struct StrichartzReport {
  StrichartzConfig config;
  std::vector<BilinearRow> rows;
  std::vector<LinearRow2d> rows_2d;
  std::vector<CalibrationRow> calibration;
  bool fitted = false;
  double slope_max = 0.0;   // log-log slope of max_norm against M
  double slope_mean = 0.0;  // same for mean_norm

  std::string csv() const;
  std::string calibration_csv() const;
  nlohmann::json to_json() const;
};

std::vector<CalibrationRow> strichartz_calibration(double lambda, double T);
StrichartzReport run_strichartz_probe(const StrichartzConfig& cfg);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nlslab
