#pragma once

// Brute-force reference computations used by the tests. They work from the
// definitions (u(x) = w sum_k u^(k) e^{i k.x}, f^(k) = int e^{-i k.x} f) and
// share no code with the library beyond the field container.

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "nlslab/field.hpp"

namespace oracle {

using nlslab::cd;
using nlslab::Mode;
using nlslab::SpectralField;
using nlslab::TorusGeometry;

inline double pi() { return std::acos(-1.0); }

inline double weight(const TorusGeometry& g) {
  double w = 1.0 / (2 * pi() * g.lambda);
  if (g.dimension == 2) w /= 2 * pi() * g.lambda * g.gamma[0];
  return w;
}

inline std::array<double, 2> freq(const TorusGeometry& g, const Mode& n) {
  std::array<double, 2> k{n[0] / g.lambda, 0.0};
  if (g.dimension == 2) k[1] = n[1] / (g.lambda * g.gamma[0]);
  return k;
}

// Point evaluation by the defining sum.
inline cd eval(const SpectralField& f, double x, double y = 0.0) {
  const auto& g = f.geometry();
  cd s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = freq(g, f.mode(i));
    s += f.coeffs()[i] * std::polar(1.0, k[0] * x + k[1] * y);
  }
  return weight(g) * s;
}

// int |u|^p over the torus by a Riemann sum on an M (x M) grid; exact for
// trigonometric polynomials when M exceeds the degree of |u|^p.
inline double integral_abs_pow(const SpectralField& f, int p, int M) {
  const auto& g = f.geometry();
  const double Lx = 2 * pi() * g.lambda;
  const double Ly = g.dimension == 2 ? 2 * pi() * g.lambda * g.gamma[0] : 1.0;
  const int My = g.dimension == 2 ? M : 1;
  double s = 0.0;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < My; ++b) s += std::pow(std::abs(eval(f, Lx * a / M, Ly * b / My)), p);
  return s * (Lx / M) * (g.dimension == 2 ? Ly / My : 1.0);
}

// (f g)^(k) = w sum_{a + b = k} f^(a) g^(b), restricted to the cutoff of f.
inline SpectralField convolve(const SpectralField& f, const SpectralField& g) {
  SpectralField out(f.geometry(), f.cutoff());
  const double w = weight(f.geometry());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Mode a = f.mode(i), b = g.mode(j);
      const Mode c{a[0] + b[0], a[1] + b[1]};
      if (out.contains(c)) out[c] += w * f.coeffs()[i] * g.coeffs()[j];
    }
  return out;
}

inline SpectralField random_field(const TorusGeometry& g, std::array<int, 2> K, std::uint64_t seed) {
  SpectralField f(g, K);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& c : f.coeffs()) c = cd(n(rng), n(rng));
  return f;
}

}  // namespace oracle
