#include "nlslab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/kernels.hpp"

namespace nlslab {

double PhysicalGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < geometry.dimension; ++a) v *= geometry.side_length(a) / points[a];
  return v;
}

int dealias_factor(int degree) { return (degree + 2) / 2; }

static int wrap(int n, int M) { return ((n % M) + M) % M; }

PhysicalGrid to_physical(const SpectralField& f, int oversample) {
  if (oversample < 1) throw ValidationError("oversample", "must be >= 1");
  return to_physical(f, {f.extent(0) * oversample, f.dim() == 2 ? f.extent(1) * oversample : 1});
}

PhysicalGrid to_physical(const SpectralField& f, std::array<int, 2> M) {
  if (f.dim() == 1) M[1] = 1;
  for (int a = 0; a < f.dim(); ++a)
    if (M[a] < f.extent(a))
      throw ValidationError("grid", "axis " + std::to_string(a) + " has " + std::to_string(M[a]) +
                                        " points, need >= " + std::to_string(f.extent(a)));
  PhysicalGrid g{f.geometry(), M, std::vector<cd>(static_cast<std::size_t>(M[0]) * M[1])};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Mode n = f.mode(i);
    g.values[static_cast<std::size_t>(wrap(n[0], M[0])) * M[1] + wrap(n[1], M[1])] = f.coeffs()[i];
  }
  detail::fft_inplace(g.values.data(), M[0], M[1], +1);
  const double w = f.geometry().weight();
  for (auto& v : g.values) v *= w;
  return g;
}

SpectralField from_physical(const PhysicalGrid& g, std::array<int, 2> K) {
  SpectralField f(g.geometry, K);
  for (int a = 0; a < f.dim(); ++a)
    if (g.points[a] < f.extent(a))
      throw ValidationError("grid", "too few points for cutoff " + std::to_string(K[a]));
  std::vector<cd> buf = g.values;
  detail::fft_inplace(buf.data(), g.points[0], g.points[1], -1);
  const double dv = g.cell_volume();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Mode n = f.mode(i);
    f.coeffs()[i] = dv * buf[static_cast<std::size_t>(wrap(n[0], g.points[0])) * g.points[1] +
                             wrap(n[1], g.points[1])];
  }
  return f;
}

double norm(const SpectralField& f, NormKind kind, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(f.coeffs()[i]);
    if (kind == NormKind::L2) {
      acc += a2;
      continue;
    }
    const double k2 = f.freq_norm2(i);
    if (kind == NormKind::Hs) {
      acc += std::pow(1.0 + k2, s) * a2;
    } else if (k2 > 0.0) {
      acc += std::pow(k2, s) * a2;
    } else if (s == 0.0) {
      acc += a2;
    }
  }
  return std::sqrt(f.geometry().weight() * acc);
}

double quadrature_lp(const PhysicalGrid& g, double p) {
  double s = 0.0;
  const double half = p / 2.0;
  if (half == std::floor(half) && half >= 1.0 && half <= 16.0) {
    s = kernels::sum_abs_pow(g.values.data(), g.values.size(), static_cast<int>(half));
  } else {
    for (const cd& v : g.values) s += std::pow(std::abs(v), p);
  }
  return s * g.cell_volume();
}

int sharp_shell(double r) {
  if (r < 2.0) return 1;
  int N = 2;
  while (r >= 2.0 * N) N *= 2;
  return N;
}

static double phi(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * std::log2(r));
  return c * c;
}

double smooth_shell_weight(double r, int N) {
  if (N <= 1) return phi(r);
  return phi(r / N) - phi(2.0 * r / N);
}

static void check_dyadic(int N) {
  if (N < 1 || (N & (N - 1)) != 0) throw ValidationError("N", "must be a dyadic integer >= 1");
}

SpectralField lp_project(const SpectralField& f, int N, bool sharp) {
  check_dyadic(N);
  SpectralField out = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = std::sqrt(f.freq_norm2(i));
    if (sharp) {
      if (sharp_shell(r) != N) out.coeffs()[i] = 0.0;
    } else {
      out.coeffs()[i] *= smooth_shell_weight(r, N);
    }
  }
  return out;
}

SpectralField project_set(const SpectralField& f, const std::function<bool(const Mode&)>& in_set) {
  SpectralField out = f;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!in_set(f.mode(i))) out.coeffs()[i] = 0.0;
  return out;
}

SpectralField free_evolve(const SpectralField& f, double t) {
  SpectralField out = f;
  for (std::size_t i = 0; i < f.size(); ++i) out.coeffs()[i] *= std::polar(1.0, -t * f.freq_norm2(i));
  return out;
}

std::vector<double> simpson_weights(std::size_t n, double T) {
  if (n < 2) throw ValidationError("samples", "need at least 2 time samples");
  const std::size_t m = n - 1;
  const double h = T / static_cast<double>(m);
  std::vector<double> w(n, 0.0);
  if (m == 1) {
    w[0] = w[1] = h / 2;
    return w;
  }
  std::size_t simpson_end = m % 2 == 0 ? m : m - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3;
    w[i + 1] += 4 * h / 3;
    w[i + 2] += h / 3;
  }
  if (m % 2 == 1) {
    const std::size_t b = simpson_end;
    w[b] += 3 * h / 8;
    w[b + 1] += 9 * h / 8;
    w[b + 2] += 9 * h / 8;
    w[b + 3] += 3 * h / 8;
  }
  return w;
}

double lp_spacetime_norm(const std::vector<SpectralField>& traj, double p, double T, int oversample) {
  if (traj.size() < 4) throw ValidationError("traj", "fewer than 4 time samples");
  if (!(p >= 2.0)) throw ValidationError("p", "must be >= 2");
  if (oversample <= 0) {
    const double half = p / 2.0;
    oversample = half == std::floor(half) ? dealias_factor(static_cast<int>(p)) : 4;
  }
  const auto w = simpson_weights(traj.size(), T);
  double acc = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) acc += w[j] * quadrature_lp(to_physical(traj[j], oversample), p);
  return std::pow(acc, 1.0 / p);
}

static std::array<int, 2> alias_free_points(const SpectralField& u, int degree, std::array<int, 2> K_out) {
  std::array<int, 2> M{1, 1};
  for (int a = 0; a < u.dim(); ++a) {
    const int K = u.cutoff()[a];
    M[a] = std::max((2 * K + 1) * dealias_factor(degree), K_out[a] + degree * K + 1);
  }
  return M;
}

SpectralField power_nonlinearity(const SpectralField& u, int q, std::array<int, 2> K_out) {
  PhysicalGrid g = to_physical(u, alias_free_points(u, 2 * q + 1, K_out));
  kernels::power_nonlinearity(g.values.data(), g.values.data(), g.values.size(), q);
  return from_physical(g, K_out);
}

SpectralField product(const SpectralField& f, const SpectralField& g, std::array<int, 2> K_out) {
  if (f.geometry() != g.geometry()) throw ValidationError("field", "geometry mismatch");
  std::array<int, 2> K{std::max(f.cutoff()[0], g.cutoff()[0]), std::max(f.cutoff()[1], g.cutoff()[1])};
  const SpectralField fe = f.with_cutoff(K), ge = g.with_cutoff(K);
  const auto M = alias_free_points(fe, 2, K_out);
  PhysicalGrid a = to_physical(fe, M);
  const PhysicalGrid b = to_physical(ge, M);
  kernels::cmul(a.values.data(), b.values.data(), a.values.size());
  return from_physical(a, K_out);
}

}  // namespace nlslab
