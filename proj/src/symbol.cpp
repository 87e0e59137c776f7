#include "nlslab/symbol.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

constexpr int kSmoothN = 8;  // S_8: degree-17 smoothstep, flat to order 8 at both ends
constexpr double kA = 0.25, kB = 0.75;
constexpr double kPlateau = 7.0 / 6.0;  // solves (kB - kA) P + kA P / 2 + (1 - kB)(P + 1) / 2 = 1

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Monomial coefficients of S_8 and of its antiderivative vanishing at 0.
struct Smoothstep {
  std::array<double, 2 * kSmoothN + 2> s{};
  std::array<double, 2 * kSmoothN + 3> is{};
  Smoothstep() {
    for (int n = 0; n <= kSmoothN; ++n)
      s[kSmoothN + 1 + n] = binom(kSmoothN + n, n) * binom(2 * kSmoothN + 1, kSmoothN - n) * (n % 2 ? -1.0 : 1.0);
    for (std::size_t j = 0; j < s.size(); ++j) is[j + 1] = s[j] / static_cast<double>(j + 1);
  }
};

const Smoothstep& smoothstep() {
  static const Smoothstep st;
  return st;
}

// Truncated Taylor series arithmetic.
using Jet = std::vector<double>;

Jet constant(double c, int order) {
  Jet j(order + 1, 0.0);
  j[0] = c;
  return j;
}

Jet mul(const Jet& a, const Jet& b) {
  Jet r(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; i + k < a.size(); ++k) r[i + k] += a[i] * b[k];
  return r;
}

Jet affine(const Jet& a, double scale, double shift) {
  Jet r = a;
  for (double& v : r) v *= scale;
  r[0] += shift;
  return r;
}

template <std::size_t S>
Jet horner(const std::array<double, S>& c, const Jet& x) {
  const int order = static_cast<int>(x.size()) - 1;
  Jet r = constant(c[S - 1], order);
  for (std::size_t i = S - 1; i-- > 0;) r = affine(mul(r, x), 1.0, c[i]);
  return r;
}

Jet jet_exp(const Jet& a) {
  // r' = a' r, so k r_k = sum_{j=1..k} j a_j r_{k-j}
  Jet r(a.size(), 0.0);
  r[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * r[k - j];
    r[k] = s / static_cast<double>(k);
  }
  return r;
}

// Ramp h composed with a jet in t; the piece is chosen by the base point.
Jet ramp_jet(const Jet& t) {
  const auto& st = smoothstep();
  const double t0 = t[0];
  const int order = static_cast<int>(t.size()) - 1;
  if (t0 <= 0.0) return constant(0.0, order);
  if (t0 >= 1.0) return t;
  if (t0 < kA) return affine(horner(st.is, affine(t, 1.0 / kA, 0.0)), kPlateau * kA, 0.0);
  const double h_a = kPlateau * kA / 2.0;
  if (t0 <= kB) return affine(t, kPlateau, h_a - kPlateau * kA);
  const double h_b = h_a + kPlateau * (kB - kA);
  const double len = 1.0 - kB;
  const Jet u = affine(t, 1.0 / len, -kB / len);
  Jet r = affine(u, kPlateau * len, h_b);
  const Jet iu = horner(st.is, u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (kPlateau - 1.0) * len * iu[i];
  return r;
}

}  // namespace

SmoothingSymbol make_symbol(double N, double alpha) {
  if (!(N >= 1.0) || !std::isfinite(N)) throw ValidationError("N", "must be a finite real >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha", "must be a finite real >= 0");
  return {N, alpha};
}

double monotone_alpha_limit() { return 1.0 / kPlateau; }

double transition_ramp(double t) { return ramp_jet(Jet{t})[0]; }

double m_value(double r, const SmoothingSymbol& sym) {
  if (r <= sym.N || sym.alpha == 0.0) return 1.0;
  const double t = std::log2(r / sym.N);
  if (t >= 1.0) return std::pow(sym.N / r, sym.alpha);
  return std::exp(-sym.alpha * std::numbers::ln2 * transition_ramp(t));
}

std::vector<double> m_taylor(double r, const SmoothingSymbol& sym, int order) {
  if (!(r > 0.0)) throw ValidationError("r", "must be positive");
  // t(r + e) = log2(r / N) + log(1 + e / r) / ln2
  Jet t(order + 1, 0.0);
  t[0] = std::log2(r / sym.N);
  for (int j = 1; j <= order; ++j)
    t[j] = (j % 2 ? 1.0 : -1.0) / (j * std::pow(r, j) * std::numbers::ln2);
  return jet_exp(affine(ramp_jet(t), -sym.alpha * std::numbers::ln2, 0.0));
}

nlohmann::json SymbolSelfCheck::to_json() const {
  return {{"order", order},
          {"annulus grid", {{"r_over_N_min", grid.empty() ? 0.0 : grid.front()},
                            {"r_over_N_max", grid.empty() ? 0.0 : grid.back()},
                            {"points", grid.size()}}},
          {"constants", constants},
          {"max constant", max_constant}};
}

SymbolSelfCheck symbol_self_check(const SmoothingSymbol& sym, int order, int grid_points) {
  if (order < 0 || grid_points < 2) throw ValidationError("order", "need order >= 0 and >= 2 grid points");
  SymbolSelfCheck rep;
  rep.order = order;
  rep.constants.assign(order + 1, 0.0);
  for (int i = 0; i < grid_points; ++i) {
    const double x = 1.0 + static_cast<double>(i) / (grid_points - 1);
    rep.grid.push_back(x);
    const double r = x * sym.N;
    const auto c = m_taylor(r, sym, order);
    double fact = 1.0;
    for (int a = 0; a <= order; ++a) {
      if (a > 0) fact *= a;
      rep.constants[a] = std::max(rep.constants[a], std::abs(c[a]) * fact * std::pow(r, a) / c[0]);
    }
  }
  for (double c : rep.constants) rep.max_constant = std::max(rep.max_constant, c);
  return rep;
}

}  // namespace nlslab
