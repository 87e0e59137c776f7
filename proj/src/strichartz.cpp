#include "nlslab/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/quadrature.hpp"

namespace nlslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double k2(const FreeWave& u, const FreeMode& m) {
  const double a = m.n[0] / u.lambda, b = m.n[1] / u.lambda;
  return a * a + b * b;
}

struct Extent {
  std::array<int, 2> lo{0, 0}, hi{0, 0};
  double phase_lo = 0.0, phase_hi = 0.0;
  int width(int a) const { return hi[a] - lo[a]; }
  int centre(int a) const { return lo[a] + width(a) / 2; }
  double phase_range() const { return phase_hi - phase_lo; }
};

Extent extent(const FreeWave& u) {
  if (u.modes.empty()) throw ValidationError("wave", "no modes");
  if (u.d != 1 && u.d != 2) throw ValidationError("wave", "dimension must be 1 or 2");
  if (!(u.lambda > 0.0)) throw ValidationError("lambda", "must be > 0");
  Extent e;
  e.lo = e.hi = u.modes.front().n;
  e.phase_lo = e.phase_hi = k2(u, u.modes.front());
  for (const auto& m : u.modes) {
    for (int a = 0; a < u.d; ++a) {
      e.lo[a] = std::min(e.lo[a], m.n[a]);
      e.hi[a] = std::max(e.hi[a], m.n[a]);
    }
    e.phase_lo = std::min(e.phase_lo, k2(u, m));
    e.phase_hi = std::max(e.phase_hi, k2(u, m));
  }
  return e;
}

int grid_size(int needed) {
  int p = 8;
  while (p < needed) p *= 2;
  return p;
}

// Gauss-Legendre rule on [0, T] resolving integrands whose time frequencies
// are bounded by `omega`.
GaussRule time_rule(double omega, double T) {
  const double kappa = 0.5 * omega * T;
  const int q = static_cast<int>(std::ceil(kappa)) + 32;
  if (q > 200000) throw BudgetError("time quadrature would need " + std::to_string(q) + " nodes", q);
  GaussRule r = gauss_legendre(q);
  for (int i = 0; i < q; ++i) {
    r.nodes[i] = 0.5 * T * (r.nodes[i] + 1.0);
    r.weights[i] *= 0.5 * T;
  }
  return r;
}

// Samples of the (frequency shifted) wave at time t on a P0 x P1 grid. The
// shift multiplies u by a unimodular factor, which leaves every |u| unchanged.
void sample(const FreeWave& u, const Extent& e, double t, int P0, int P1, std::vector<cd>& buf) {
  std::fill(buf.begin(), buf.end(), cd(0.0));
  const int c0 = e.centre(0), c1 = u.d == 2 ? e.centre(1) : 0;
  for (const auto& m : u.modes) {
    const int i0 = ((m.n[0] - c0) % P0 + P0) % P0;
    const int i1 = u.d == 2 ? ((m.n[1] - c1) % P1 + P1) % P1 : 0;
    buf[static_cast<std::size_t>(i0) * P1 + i1] += m.c * std::polar(1.0, -k2(u, m) * t);
  }
  detail::fft_inplace(buf.data(), P0, P1, +1);
}

double cell(const FreeWave& u, int P0, int P1) {
  double c = kTwoPi * u.lambda / P0;
  if (u.d == 2) c *= kTwoPi * u.lambda / P1;
  return c;
}

}  // namespace

double FreeWave::l2_norm() const {
  double s = 0.0;
  for (const auto& m : modes) s += std::norm(m.c);
  return std::sqrt(s * std::pow(kTwoPi * lambda, d));
}

double bilinear_norm(const FreeWave& u1, const FreeWave& u2, double T) {
  if (!(T > 0.0)) throw ValidationError("T", "must be > 0");
  if (u1.d != u2.d || u1.lambda != u2.lambda) throw ValidationError("wave", "factors live on different tori");
  const Extent e1 = extent(u1), e2 = extent(u2);
  const int P0 = grid_size(e1.width(0) + e2.width(0) + 1);
  const int P1 = u1.d == 2 ? grid_size(e1.width(1) + e2.width(1) + 1) : 1;
  const GaussRule tr = time_rule(e1.phase_range() + e2.phase_range(), T);
  std::vector<cd> a(static_cast<std::size_t>(P0) * P1), b(a.size());
  double total = 0.0;
  for (std::size_t q = 0; q < tr.nodes.size(); ++q) {
    sample(u1, e1, tr.nodes[q], P0, P1, a);
    sample(u2, e2, tr.nodes[q], P0, P1, b);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j]) * std::norm(b[j]);
    total += tr.weights[q] * s;
  }
  return std::sqrt(total * cell(u1, P0, P1));
}

double linear_norm(const FreeWave& u, int p, double T) {
  if (p < 2 || p % 2) throw ValidationError("p", "must be an even integer >= 2");
  if (!(T > 0.0)) throw ValidationError("T", "must be > 0");
  const int h = p / 2;
  const Extent e = extent(u);
  const int P0 = grid_size(h * e.width(0) + 1);
  const int P1 = u.d == 2 ? grid_size(h * e.width(1) + 1) : 1;
  const GaussRule tr = time_rule(h * e.phase_range(), T);
  std::vector<cd> a(static_cast<std::size_t>(P0) * P1);
  double total = 0.0;
  for (std::size_t q = 0; q < tr.nodes.size(); ++q) {
    sample(u, e, tr.nodes[q], P0, P1, a);
    double s = 0.0;
    for (const cd& z : a) s += std::pow(std::norm(z), h);
    total += tr.weights[q] * s;
  }
  return std::pow(total * cell(u, P0, P1), 1.0 / p);
}

FreeWave gaussian_packet(double lambda, double k0, double dx, double x0, double phase, double lo, double hi) {
  if (!(dx > 0.0)) throw ValidationError("dx", "must be > 0");
  FreeWave u;
  u.d = 1;
  u.lambda = lambda;
  // exp(-40) is below double resolution relative to the peak
  const double half = std::sqrt(40.0) / dx;
  const int n_lo = static_cast<int>(std::ceil(std::max(lo, k0 - half) * lambda));
  const int n_hi = static_cast<int>(std::floor(std::min(hi, k0 + half) * lambda));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double k = n / lambda;
    const double a = std::exp(-(k - k0) * (k - k0) * dx * dx);
    u.modes.push_back({{n, 0}, std::polar(a, phase - k * x0)});
  }
  if (u.modes.empty()) throw ValidationError("packet", "no lattice frequency in the window");
  const double nrm = u.l2_norm();
  for (auto& m : u.modes) m.c /= nrm;
  return u;
}

double CalibrationRow::rel_error() const {
  return expected != 0.0 ? std::abs(measured - expected) / std::abs(expected) : std::abs(measured);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit", "need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit", "log-log fit needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  if (sxx == 0.0) throw ValidationError("fit", "degenerate abscissae");
  return sxy / sxx;
}

std::vector<CalibrationRow> strichartz_calibration(double lambda, double T) {
  std::vector<CalibrationRow> rows;
  const cd c1(0.7, -0.2), c2(1.3, 0.0), c3(-0.4, 0.9);
  FreeWave a{1, lambda, {{{-3, 0}, c1}}};
  FreeWave b{1, lambda, {{{5, 0}, c2}}};
  rows.push_back({"bilinear-two-modes-1d", bilinear_norm(a, b, T),
                  std::abs(c1) * std::abs(c2) * std::sqrt(kTwoPi * lambda * T)});
  rows.push_back({"l6-plane-wave-1d", linear_norm(a, 6, T), std::abs(c1) * std::pow(kTwoPi * lambda * T, 1.0 / 6)});
  FreeWave w{1, lambda, {{{-3, 0}, c1}, {{5, 0}, c2}, {{11, 0}, c3}}};
  rows.push_back({"l2-three-modes-1d", linear_norm(w, 2, T), w.l2_norm() * std::sqrt(T)});
  FreeWave p2{2, lambda, {{{2, -1}, c3}}};
  rows.push_back({"l4-plane-wave-2d", linear_norm(p2, 4, T),
                  std::abs(c3) * std::pow(kTwoPi * lambda * kTwoPi * lambda * T, 0.25)});
  return rows;
}

StrichartzReport run_strichartz_probe(const StrichartzConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw ValidationError("strichartz.lambda", "must be > 0");
  if (!(cfg.N > 0.0)) throw ValidationError("strichartz.N", "must be > 0");
  if (cfg.samples < 1) throw ValidationError("strichartz.samples", "must be >= 1");
  for (int M : cfg.M)
    if (M < 1) throw ValidationError("strichartz.M", "must be >= 1");
  StrichartzReport rep;
  rep.config = cfg;
  const double T = cfg.lambda / cfg.N;
  rep.calibration = strichartz_calibration(cfg.lambda, T);

  constexpr int kL6Samples = 16;
  for (int M : cfg.M) {
    struct Draw {
      double k1, k2, dx, tc, xc, th1, th2;
    };
    std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(M));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double dx_lo = 0.5, dx_hi = 4.0;
    std::vector<Draw> draws(cfg.samples);
    for (auto& d : draws) {
      d.k1 = -M * (1.25 + 0.5 * U(rng));
      d.k2 = M * (1.25 + 0.5 * U(rng));
      d.dx = dx_lo * std::pow(dx_hi / dx_lo, U(rng));
      d.tc = T * (0.2 + 0.6 * U(rng));
      d.xc = kTwoPi * cfg.lambda * U(rng);
      d.th1 = kTwoPi * U(rng);
      d.th2 = kTwoPi * U(rng);
    }
    std::vector<double> norm(cfg.samples), l6(cfg.samples, 0.0);
    parallel_chunks(draws.size(), draws.size(), [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto& d = draws[i];
        // packets meet at (tc, xc): centres move with group velocity 2 k0
        const FreeWave u1 = gaussian_packet(cfg.lambda, d.k1, d.dx, d.xc - 2 * d.k1 * d.tc, d.th1, -2.0 * M, -1.0 * M);
        const FreeWave u2 = gaussian_packet(cfg.lambda, d.k2, d.dx, d.xc - 2 * d.k2 * d.tc, d.th2, 1.0 * M, 2.0 * M);
        norm[i] = bilinear_norm(u1, u2, T);
        if (static_cast<int>(i) < kL6Samples) l6[i] = linear_norm(u1, 6, T);
      }
    });
    BilinearRow r;
    r.M = M;
    r.lambda = cfg.lambda;
    r.N = cfg.N;
    r.T = T;
    r.samples = cfg.samples;
    for (int i = 0; i < cfg.samples; ++i) {
      r.max_norm = std::max(r.max_norm, norm[i]);
      r.mean_norm += norm[i] / cfg.samples;
      r.max_l6 = std::max(r.max_l6, l6[i]);
    }
    rep.rows.push_back(r);
  }
  if (rep.rows.size() >= 2) {
    std::vector<double> x, ymax, ymean;
    for (const auto& r : rep.rows) {
      x.push_back(r.M);
      ymax.push_back(r.max_norm);
      ymean.push_back(r.mean_norm);
    }
    bool distinct = false;
    for (double v : x) distinct = distinct || v != x.front();
    if (distinct) {
      rep.fitted = true;
      rep.slope_max = loglog_slope(x, ymax);
      rep.slope_mean = loglog_slope(x, ymean);
    }
  }

  // 2d: random phases on the annulus M <= |k| < 2M, unit L^2, T = 1.
  for (int M : cfg.M_2d) {
    if (M < 1) throw ValidationError("strichartz.M_2d", "must be >= 1");
    std::mt19937_64 rng(cfg.seed * 0xD1B54A32D192ED03ULL + static_cast<std::uint64_t>(M));
    std::uniform_real_distribution<double> U(0.0, kTwoPi);
    LinearRow2d r;
    r.M = M;
    r.lambda = cfg.lambda_2d;
    r.samples = cfg.samples_2d;
    const int R = static_cast<int>(std::ceil(2 * M * cfg.lambda_2d));
    for (int s = 0; s < cfg.samples_2d; ++s) {
      FreeWave u{2, cfg.lambda_2d, {}};
      for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b) {
          const double k = std::hypot(a, b) / cfg.lambda_2d;
          if (k >= M && k < 2 * M) u.modes.push_back({{a, b}, std::polar(1.0, U(rng))});
        }
      if (u.modes.empty()) break;
      const double nrm = u.l2_norm();
      for (auto& m : u.modes) m.c /= nrm;
      const double v = linear_norm(u, 4, r.T);
      r.max_norm = std::max(r.max_norm, v);
      r.mean_norm += v / cfg.samples_2d;
    }
    rep.rows_2d.push_back(r);
  }
  return rep;
}

std::string StrichartzReport::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "d,N,M,lambda,T,norm,statistic,sample_count\n";
  for (const auto& r : rows) {
    os << "1," << r.N << ',' << r.M << ',' << r.lambda << ',' << r.T << ',' << r.max_norm << ",bilinear-max,"
       << r.samples << '\n';
    os << "1," << r.N << ',' << r.M << ',' << r.lambda << ',' << r.T << ',' << r.mean_norm << ",bilinear-mean,"
       << r.samples << '\n';
    os << "1," << r.N << ',' << r.M << ',' << r.lambda << ',' << r.T << ',' << r.max_l6 << ",l6-max,"
       << std::min(r.samples, 16) << '\n';
  }
  for (const auto& r : rows_2d) {
    os << "2,," << r.M << ',' << r.lambda << ',' << r.T << ',' << r.max_norm << ",l4-max," << r.samples << '\n';
    os << "2,," << r.M << ',' << r.lambda << ',' << r.T << ',' << r.mean_norm << ",l4-mean," << r.samples << '\n';
  }
  return os.str();
}

std::string StrichartzReport::calibration_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "name,measured,expected,rel_error\n";
  for (const auto& c : calibration)
    os << c.name << ',' << c.measured << ',' << c.expected << ',' << c.rel_error() << '\n';
  return os.str();
}

nlohmann::json StrichartzReport::to_json() const {
  nlohmann::json j;
  j["lambda"] = config.lambda;
  j["N"] = config.N;
  j["T"] = config.lambda / config.N;
  j["M"] = config.M;
  j["samples"] = config.samples;
  j["seed"] = config.seed;
  j["fitted"] = fitted;
  if (fitted) {
    j["slope_max"] = slope_max;
    j["slope_mean"] = slope_mean;
  }
  j["predicted_slope"] = -0.5;
  auto& cal = j["calibration"] = nlohmann::json::array();
  for (const auto& c : calibration)
    cal.push_back({{"name", c.name}, {"measured", c.measured}, {"expected", c.expected}, {"rel_error", c.rel_error()}});
  return j;
}

}  // namespace nlslab
