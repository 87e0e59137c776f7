#include "nlslab/random_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "nlslab/energies.hpp"
#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

void normalize(SpectralField& u, double target) {
  if (target < 0.0) throw ValidationError("mass", "must be >= 0");
  const double m = mass(u);
  if (m == 0.0) return;
  const double c = std::sqrt(target / m);
  for (cd& z : u.coeffs()) z *= c;
}

}  // namespace

SpectralField random_hs(const TorusGeometry& g, std::array<int, 2> K, double s, double target, std::uint64_t seed) {
  SpectralField u(g, K);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double expo = -(s + 0.5 * g.dimension + 0.01);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double amp = std::pow(1.0 + u.freq_norm2(i), 0.5 * expo);
    u.coeffs()[i] = std::polar(amp, phase(rng));
  }
  normalize(u, target);
  return u;
}

SpectralField random_modes(const TorusGeometry& g, std::array<int, 2> K, int modes, double target,
                           std::uint64_t seed) {
  SpectralField u(g, K);
  if (modes < 1 || static_cast<std::size_t>(modes) > u.size())
    throw ValidationError("modes", "must be between 1 and the lattice size");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(u.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < modes; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::normal_distribution<double> gauss;
  for (int i = 0; i < modes; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    u.coeffs()[idx[i]] = cd(re, im);
  }
  normalize(u, target);
  return u;
}

SpectralField plane_wave(const TorusGeometry& g, std::array<int, 2> K, const Mode& n, cd c) {
  SpectralField u(g, K);
  if (!u.contains(n)) throw ValidationError("mode", "outside the lattice");
  u[n] = c * g.volume();
  return u;
}

SpectralField from_modes(const TorusGeometry& g, std::array<int, 2> K, const std::vector<ModeAmplitude>& modes) {
  SpectralField u(g, K);
  for (const auto& m : modes) {
    if (!u.contains(m.n)) throw ValidationError("modes", "mode outside the lattice");
    u[m.n] += m.c;
  }
  return u;
}

}  // namespace nlslab
