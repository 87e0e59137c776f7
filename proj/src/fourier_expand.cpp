#include "nlslab/fourier_expand.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nlslab/errors.hpp"
#include "nlslab/quadrature.hpp"

namespace nlslab {

double MultiplierBox::volume() const {
  double v = 1.0;
  for (const auto& I : intervals) v *= I.length;
  return v;
}

bool MultiplierBox::contains(const std::vector<double>& k) const {
  if (k.size() != intervals.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::abs(k[i] - intervals[i].center) > intervals[i].length / 2) return false;
  return true;
}

MultiplierBox box_around(const FrequencyTuple& t, const std::vector<double>& lengths) {
  if (t.d != 1) throw ValidationError("box", "boxes are built around 1d tuples");
  if (lengths.size() != t.k.size()) throw ValidationError("box", "one length per frequency is required");
  MultiplierBox b;
  for (int i = 0; i < t.n(); ++i) {
    if (!(lengths[i] > 0.0)) throw ValidationError("box", "interval lengths must be positive");
    b.intervals.push_back({t.k[i][0], lengths[i]});
  }
  return b;
}

namespace {

// Coefficients of the trigonometric polynomial of least weighted norm
// sum <xi>^{2q} |a_xi|^2 among least-squares fits of g at Gauss-Legendre nodes
// on the interval.
std::vector<cd> fit_axis(const std::function<cd(double)>& g, const Interval& I, int T, int nodes, int q,
                                  double cutoff) {
  const GaussRule rule = gauss_legendre(nodes);
  const int M = 2 * T + 1;
  Eigen::MatrixXcd A(nodes, M);
  Eigen::VectorXcd b(nodes);
  const cd g0 = g(I.center);
  std::vector<double> wq(M);
  for (int j = 0; j < M; ++j) wq[j] = std::pow(1.0 + static_cast<double>(j - T) * (j - T), 0.5 * q);
  for (int r = 0; r < nodes; ++r) {
    const double k = I.center + 0.5 * I.length * rule.nodes[r];
    const double sw = std::sqrt(rule.weights[r]);
    for (int j = 0; j < M; ++j) A(r, j) = sw * std::polar(1.0, k * (j - T) / I.length) / wq[j];
    b(r) = sw * (g(k) - g0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& S = svd.singularValues();
  Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(M);
  if (S.size() > 0 && S(0) > 0.0) {
    const Eigen::VectorXcd ub = svd.matrixU().adjoint() * b;
    for (int i = 0; i < S.size(); ++i)
      if (S(i) > cutoff * S(0)) coef += svd.matrixV().col(i) * (ub(i) / S(i));
  }
  std::vector<cd> a(M);
  for (int j = 0; j < M; ++j) a[j] = coef(j) / wq[j];
  a[T] += g0;
  return a;
}

cd eval_axis(const std::vector<cd>& a, int T, double k, double L) {
  cd s = 0.0;
  for (int j = -T; j <= T; ++j) s += a[j + T] * std::polar(1.0, k * j / L);
  return s;
}

struct Resolved {
  std::function<cd(const double*)> F;
  int n = 0;
};

Resolved resolve_symbol(const SymbolSpec& sym, const MultiplierBox& box) {
  if (sym.params.d != 1) throw ValidationError("symbol", "Fourier expansion is implemented for 1d symbols");
  const int n = sym.arity;
  if (static_cast<int>(box.intervals.size()) != n)
    throw ValidationError("box", "box has " + std::to_string(box.intervals.size()) + " intervals, symbol arity is " +
                                     std::to_string(n));
  for (const auto& I : box.intervals)
    if (!(I.length > 0.0)) throw ValidationError("box", "interval lengths must be positive");
  Resolved r;
  r.n = n;
  if (sym.name == SymbolName::MBar6) {
    // Gate on the box centres: they must form a resonant point of Gamma_6.
    std::vector<Vec2> centres;
    double sum = 0.0, scale = 1.0;
    for (const auto& I : box.intervals) {
      centres.push_back({I.center, 0.0});
      sum += I.center;
      scale = std::max(scale, std::abs(I.center));
    }
    if (std::abs(sum) > 1e-9 * scale) throw ValidationError("box", "box centres must sum to zero");
    const auto c = classify(centres.data(), 6, 1, sym.params.N, sym.params.thresholds);
    if (c.verdict != Verdict::Resonant) throw ValidationError("box", "box centre is not in the resonant region");
    // Trivial extension: the resonant formula without the indicator.
    const auto ms = sym.params.smoothing();
    const cd pref(0.0, sym.params.sign / 6.0);
    r.F = [ms, pref](const double* k) {
      Vec2 v[6];
      for (int i = 0; i < 6; ++i) v[i] = {k[i], 0.0};
      return pref * m_multiplier_raw(v, 6, ms);
    };
    return r;
  }
  auto eval = sym.eval;
  r.F = [eval, n](const double* k) {
    Vec2 v[16];
    for (int i = 0; i < n; ++i) v[i] = {k[i], 0.0};
    return eval(v);
  };
  return r;
}

}  // namespace

cd FourierExpansion::coefficient(const std::vector<int>& xi) const {
  if (static_cast<int>(xi.size()) != n) throw ValidationError("xi", "wrong number of indices");
  for (int x : xi)
    if (std::abs(x) > trunc) return 0.0;
  const double vol = box.volume();
  if (additive) {
    int nz = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (xi[i] != 0) {
        nz = i;
        ++count;
      }
    if (count > 1) return 0.0;
    if (count == 0) {
      cd s = -static_cast<double>(n - 1) * center_value;
      for (int i = 0; i < n; ++i) s += axis[i][trunc];
      return vol * s;
    }
    return vol * axis[nz][xi[nz] + trunc];
  }
  cd p = vol / std::pow(center_value, n - 1);
  for (int i = 0; i < n; ++i) p *= axis[i][xi[i] + trunc];
  return p;
}

cd FourierExpansion::evaluate(const double* k) const {
  if (additive) {
    cd s = -static_cast<double>(n - 1) * center_value;
    for (int i = 0; i < n; ++i) s += eval_axis(axis[i], trunc, k[i], box.intervals[i].length);
    return s;
  }
  cd p = 1.0 / std::pow(center_value, n - 1);
  for (int i = 0; i < n; ++i) p *= eval_axis(axis[i], trunc, k[i], box.intervals[i].length);
  return p;
}

double FourierExpansion::abs_sum() const {
  const double vol = box.volume();
  double s = 0.0;
  if (additive) {
    s = std::abs(coefficient(std::vector<int>(n, 0)));
    for (int i = 0; i < n; ++i)
      for (int j = -trunc; j <= trunc; ++j)
        if (j != 0) s += vol * std::abs(axis[i][j + trunc]);
    return s / vol;
  }
  s = vol / std::pow(std::abs(center_value), n - 1);
  for (int i = 0; i < n; ++i) {
    double a = 0.0;
    for (const cd& c : axis[i]) a += std::abs(c);
    s *= a;
  }
  return s / vol;
}

double FourierExpansion::normalized_max() const {
  double m = 0.0;
  for (double e : envelope) m = std::max(m, e);
  return symbol_sup > 0.0 ? m / (box.volume() * symbol_sup) : 0.0;
}

nlohmann::json FourierExpansion::report() const {
  nlohmann::json j;
  j["arity"] = n;
  j["trunc"] = trunc;
  j["separable"] = additive ? "sum" : "product";
  auto& b = j["box"] = nlohmann::json::array();
  for (const auto& I : box.intervals) b.push_back({{"center", I.center}, {"length", I.length}});
  j["envelope"] = envelope;
  if (std::isfinite(decay_slope)) {
    j["decay_slope"] = decay_slope;
  } else {
    j["decay_slope"] = nullptr;
  }
  j["symbol_sup"] = symbol_sup;
  j["normalized_max"] = normalized_max();
  j["abs_sum_over_volume"] = abs_sum();
  j["resolution_gap"] = resolution_gap;
  return j;
}

namespace {

void finish(FourierExpansion& e) {
  const int T = e.trunc;
  const double vol = e.box.volume();
  e.envelope.assign(T + 1, 0.0);
  if (e.additive) {
    e.envelope[0] = std::abs(e.coefficient(std::vector<int>(e.n, 0)));
    for (int j = 1; j <= T; ++j)
      for (int i = 0; i < e.n; ++i)
        e.envelope[j] = std::max({e.envelope[j], vol * std::abs(e.axis[i][T + j]), vol * std::abs(e.axis[i][T - j])});
  } else {
    // max over xi with max |xi_i| = j of prod |a_i(xi_i)|
    const double pre = vol / std::pow(std::abs(e.center_value), e.n - 1);
    for (int j = 0; j <= T; ++j) {
      double best = 0.0;
      for (int i = 0; i < e.n; ++i) {
        double p = std::max(std::abs(e.axis[i][T + j]), std::abs(e.axis[i][T - j]));
        for (int l = 0; l < e.n; ++l) {
          if (l == i) continue;
          double m = 0.0;
          for (int x = -j; x <= j; ++x) m = std::max(m, std::abs(e.axis[l][T + x]));
          p *= m;
        }
        best = std::max(best, p);
      }
      e.envelope[j] = pre * best;
    }
  }
  const double floor = 1e-14 * std::max(e.envelope[0], e.symbol_sup * vol);
  std::vector<double> xs, ys;
  for (int j = 1; j <= T; ++j)
    if (e.envelope[j] > floor) {
      xs.push_back(std::log(std::sqrt(1.0 + static_cast<double>(j) * j)));
      ys.push_back(std::log(e.envelope[j]));
    }
  if (xs.size() < 2) {
    e.decay_slope = std::numeric_limits<double>::infinity();
    return;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  e.decay_slope = -sxy / sxx;
}

std::vector<double> sample_point(const MultiplierBox& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> k(box.intervals.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = box.intervals[i].center + box.intervals[i].length * u(rng);
  return k;
}

FourierExpansion expand_with(const Resolved& R, const MultiplierBox& box, int T, int nodes,
                             const FourierOptions& opt, bool additive) {
  FourierExpansion e;
  e.n = R.n;
  e.trunc = T;
  e.additive = additive;
  e.box = box;
  e.symbol = R.F;
  std::vector<double> c(R.n);
  for (int i = 0; i < R.n; ++i) c[i] = box.intervals[i].center;
  e.center_value = R.F(c.data());
  for (int i = 0; i < R.n; ++i) {
    auto g = [&, i](double x) {
      std::vector<double> k = c;
      k[i] = x;
      return R.F(k.data());
    };
    e.axis.push_back(fit_axis(g, box.intervals[i], T, nodes, opt.smoothness, opt.svd_cutoff));
  }
  return e;
}

}  // namespace

FourierExpansion fourier_expand(const SymbolSpec& sym, const MultiplierBox& box, int trunc, const FourierOptions& opt) {
  if (trunc < 1) throw ValidationError("trunc", "must be >= 1");
  if (opt.smoothness < 0) throw ValidationError("smoothness", "must be >= 0");
  const Resolved R = resolve_symbol(sym, box);
  const int n = R.n;
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = box.intervals[i].center;
  const cd F0 = R.F(c.data());

  // Separability on the box, probed at random points.
  std::mt19937_64 rng(12345);
  double scale = std::abs(F0);
  bool additive = true, product = std::abs(F0) > 0.0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto k = sample_point(box, rng);
    const cd Fk = R.F(k.data());
    cd sum = -static_cast<double>(n - 1) * F0;
    cd prod = 1.0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> ki = c;
      ki[i] = k[i];
      const cd gi = R.F(ki.data());
      sum += gi;
      prod *= gi;
      scale = std::max(scale, std::abs(gi));
    }
    scale = std::max(scale, std::abs(Fk));
    if (std::abs(Fk - sum) > 1e-9 * std::max(scale, 1e-300)) additive = false;
    if (product && std::abs(Fk * std::pow(F0, n - 1) - prod) > 1e-9 * std::pow(scale, n)) product = false;
  }
  if (!additive && !product)
    throw ValidationError("symbol", std::string(sym.label) + " does not split into one-variable factors on the box");

  const int nodes = opt.nodes > 0 ? opt.nodes : std::max(128, 8 * trunc);
  FourierExpansion e = expand_with(R, box, trunc, nodes, opt, additive);
  const FourierExpansion e2 = expand_with(R, box, trunc, 2 * nodes, opt, additive);

  std::mt19937_64 chk(777);
  double sup = std::abs(F0), gap = 0.0;
  for (int s = 0; s < 512; ++s) {
    const auto k = sample_point(box, chk);
    sup = std::max(sup, std::abs(R.F(k.data())));
    gap = std::max(gap, std::abs(e.evaluate(k.data()) - e2.evaluate(k.data())));
  }
  e.symbol_sup = sup;
  e.resolution_gap = sup > 0.0 ? gap / sup : gap;
  if (e.resolution_gap > opt.tolerance)
    throw NumericalError("Fourier expansion did not converge: node counts " + std::to_string(nodes) + " and " +
                         std::to_string(2 * nodes) + " disagree by " + std::to_string(e.resolution_gap));
  finish(e);
  return e;
}

double reconstruction_error(const FourierExpansion& e, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double err = 0.0, sup = e.symbol_sup;
  for (int s = 0; s < samples; ++s) {
    const auto k = sample_point(e.box, rng);
    const cd F = e.symbol(k.data());
    sup = std::max(sup, std::abs(F));
    err = std::max(err, std::abs(F - e.evaluate(k.data())));
  }
  return sup > 0.0 ? err / sup : err;
}

double two_truncation_slope(const SymbolSpec& sym, const MultiplierBox& box, int trunc, const FourierOptions& opt) {
  if (trunc < 2) throw ValidationError("trunc", "must be >= 2");
  const auto e = fourier_expand(sym, box, 2 * trunc, opt);
  double lo = 0.0, hi = 0.0;
  for (int j = trunc / 2 + 1; j <= trunc; ++j) lo = std::max(lo, e.envelope[j]);
  for (int j = trunc + 1; j <= 2 * trunc; ++j) hi = std::max(hi, e.envelope[j]);
  if (hi <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(lo / hi);
}

}  // namespace nlslab
