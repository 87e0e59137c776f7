#include "nlslab/tuple.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "nlslab/errors.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

double FrequencyTuple::mag(int i) const { return std::sqrt(mag2(i)); }

std::vector<int> FrequencyTuple::shells() const {
  std::vector<int> s(k.size());
  for (int i = 0; i < n(); ++i) s[i] = sharp_shell(mag(i));
  return s;
}

std::vector<int> FrequencyTuple::sorted_shells() const {
  auto s = shells();
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::string FrequencyTuple::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < n(); ++i) {
    if (i) os << ' ';
    if (d == 1) {
      os << k[i][0];
    } else {
      os << '[' << k[i][0] << ',' << k[i][1] << ']';
    }
  }
  os << ')';
  return os.str();
}

FrequencyTuple make_tuple(int d, std::vector<Vec2> k, double tol) {
  if (d != 1 && d != 2) throw ValidationError("d", "must be 1 or 2");
  const auto n = k.size();
  if (n != 2 && n != 4 && n != 6 && n != 10) throw ValidationError("n", "tuple length must be 2, 4, 6 or 10");
  Vec2 s{0.0, 0.0};
  double scale = 1.0;
  for (auto& v : k) {
    if (d == 1) v[1] = 0.0;
    s[0] += v[0];
    s[1] += v[1];
    scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
  }
  if (std::abs(s[0]) > tol * scale || std::abs(s[1]) > tol * scale)
    throw ValidationError("tuple", "frequencies do not sum to zero");
  return {d, std::move(k)};
}

FrequencyTuple tuple_1d(std::initializer_list<double> k) { return tuple_1d(std::vector<double>(k)); }

FrequencyTuple tuple_1d(const std::vector<double>& k) {
  std::vector<Vec2> v;
  for (double x : k) v.push_back({x, 0.0});
  return make_tuple(1, std::move(v));
}

FrequencyTuple tuple_from_modes(const TorusGeometry& g, const std::vector<Mode>& modes) {
  std::vector<Vec2> v;
  for (const auto& m : modes) v.push_back(frequency(g, m));
  return make_tuple(g.dimension, std::move(v));
}

double omega_raw(const Vec2* k, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = k[i][0] * k[i][0] + k[i][1] * k[i][1];
    s += i % 2 == 0 ? q : -q;
  }
  return s;
}

double m_multiplier_raw(const Vec2* k, int n, const SmoothingSymbol& sym) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = k[i][0] * k[i][0] + k[i][1] * k[i][1];
    const double m = m_value(std::sqrt(q), sym);
    s += (i % 2 == 0 ? 1.0 : -1.0) * m * m * q;
  }
  return s;
}

static void require_4_or_6(const FrequencyTuple& t) {
  if (t.n() != 4 && t.n() != 6) throw ValidationError("n", "expected a tuple on Gamma_4 or Gamma_6");
}

double omega(const FrequencyTuple& t) {
  require_4_or_6(t);
  return omega_raw(t.k.data(), t.n());
}

cd alpha(const FrequencyTuple& t) {
  double s = 0.0;
  for (int j = 0; j < t.n(); ++j) s += (j % 2 == 0 ? -1.0 : 1.0) * t.mag2(j);
  return {0.0, s};
}

double m_multiplier(const FrequencyTuple& t, const SmoothingSymbol& sym) {
  require_4_or_6(t);
  return m_multiplier_raw(t.k.data(), t.n(), sym);
}

}  // namespace nlslab
