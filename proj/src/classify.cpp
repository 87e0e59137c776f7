#include "nlslab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlslab/errors.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::N2llN1: return "N2llN1";
    case Rule::N3ggN4: return "N3ggN4";
    case Rule::Bilinear: return "bilinear";
    case Rule::Signs: return "signs";
    case Rule::Atilde2d: return "2d-Atilde";
    case Rule::None: break;
  }
  return "none";
}

const char* case_name(ResonantCase c) {
  switch (c) {
    case ResonantCase::I: return "i";
    case ResonantCase::II: return "ii";
    case ResonantCase::III: return "iii";
    case ResonantCase::TwoD: return "2d";
    case ResonantCase::None: break;
  }
  return "none";
}

std::string Classification::describe() const {
  std::ostringstream os;
  switch (verdict) {
    case Verdict::BelowThreshold: os << "BelowThreshold"; break;
    case Verdict::Resonant: os << "Resonant(case " << case_name(rcase) << ")"; break;
    case Verdict::NonResonant: os << "NonResonant(" << rule_name(rule) << ")"; break;
  }
  if (demoted != Rule::None) os << " demoted=" << rule_name(demoted);
  os << " omega=" << omega << " main=" << main_term << " |k1+k2|=" << witness_lhs
     << " (N3*)^2/N1*=" << witness_rhs;
  return os.str();
}

namespace {

double norm2(const Vec2& v) { return v[0] * v[0] + v[1] * v[1]; }

// Strict "comes first" in the canonical in-group order.
bool before(const Vec2& a, const Vec2& b) {
  const double ma = norm2(a), mb = norm2(b);
  if (ma != mb) return ma > mb;
  if (a[0] != b[0]) return a[0] > b[0];
  return a[1] > b[1];
}

// Lexicographic comparison of two sorted groups: magnitudes first, then values.
int compare_groups(const Vec2* a, const Vec2* b, int m) {
  for (int i = 0; i < m; ++i) {
    const double ma = norm2(a[i]), mb = norm2(b[i]);
    if (ma != mb) return ma > mb ? 1 : -1;
  }
  for (int i = 0; i < m; ++i) {
    if (a[i][0] != b[i][0]) return a[i][0] > b[i][0] ? 1 : -1;
    if (a[i][1] != b[i][1]) return a[i][1] > b[i][1] ? 1 : -1;
  }
  return 0;
}

}  // namespace

CanonicalTuple canonicalize(const Vec2* k, int n, int d) {
  if (n != 4 && n != 6) throw ValidationError("n", "classification needs n in {4, 6}");
  CanonicalTuple ct;
  ct.d = d;
  ct.n = n;
  const int m = n / 2;
  std::array<Vec2, 3> odd{}, even{};
  for (int i = 0; i < m; ++i) {
    odd[i] = k[2 * i];
    even[i] = k[2 * i + 1];
  }
  std::sort(odd.begin(), odd.begin() + m, before);
  std::sort(even.begin(), even.begin() + m, before);
  if (compare_groups(odd.data(), even.data(), m) < 0) {
    std::swap(odd, even);
    ct.swapped = true;
  }
  for (int i = 0; i < m; ++i) {
    ct.c[2 * i] = odd[i];
    ct.c[2 * i + 1] = even[i];
  }
  for (int i = 0; i < n; ++i) {
    ct.mag[i] = std::sqrt(norm2(ct.c[i]));
    ct.label[i] = sharp_shell(ct.mag[i]);
    ct.order[i] = i;
  }
  std::stable_sort(ct.order.begin(), ct.order.begin() + n,
                   [&](int a, int b) { return norm2(ct.c[a]) > norm2(ct.c[b]); });
  return ct;
}

bool in_upsilon(const Vec2* k, int n, double N) {
  for (int i = 0; i < n; ++i)
    if (norm2(k[i]) >= N * N) return true;
  return false;
}

namespace {

struct Cmp {
  double G;
  bool ll(double a, double b) const { return a <= b / G; }
  bool sim(double a, double b) const { return !ll(a, b) && !ll(b, a); }
};

int top_mask(const CanonicalTuple& c, int r) {
  int mask = 0;
  for (int i = 0; i < r; ++i) mask |= 1 << c.order[i];
  return mask;
}

constexpr int bits(std::initializer_list<int> idx) {
  int m = 0;
  for (int i : idx) m |= 1 << i;
  return m;
}

bool certified(double omega, double main, double D) {
  return main != 0.0 && std::abs(omega - main) <= std::abs(main) / D;
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

Classification classify_1d(const CanonicalTuple& ct, double N, const Thresholds& th) {
  Classification out;
  const Cmp cmp{th.gap};
  const auto& c = ct.c;
  const double k[6] = {c[0][0], c[1][0], c[2][0], c[3][0], c[4][0], c[5][0]};
  out.omega = omega_raw(c.data(), 6);
  const double N1 = ct.nstar(0), N3 = ct.nstar(2), N4 = ct.nstar(3), N5 = ct.nstar(4);
  out.witness_lhs = std::abs(k[0] + k[1]);
  out.witness_rhs = N3 * N3 / N1;
  if (!in_upsilon(c.data(), 6, N)) return out;

  auto accept = [&](Rule r, double main) {
    if (certified(out.omega, main, th.dominance)) {
      out.verdict = Verdict::NonResonant;
      out.rule = r;
      out.main_term = main;
      return true;
    }
    if (out.demoted == Rule::None) out.demoted = r;
    return false;
  };

  // Energy dominance of one group.
  {
    const double eo = k[0] * k[0] + k[2] * k[2] + k[4] * k[4];
    const double ee = k[1] * k[1] + k[3] * k[3] + k[5] * k[5];
    if (std::max(eo, ee) >= th.dominance * std::min(eo, ee)) {
      out.verdict = Verdict::NonResonant;
      out.rule = Rule::N2llN1;
      out.main_term = eo - ee;
      return out;
    }
  }
  // Third frequency well separated from the fourth.
  if (cmp.ll(N4, N3)) {
    const int t3 = top_mask(ct, 3);
    if (t3 == bits({0, 1, 2}) && accept(Rule::N3ggN4, -2.0 * k[0] * k[2])) return out;
    if (t3 == bits({0, 1, 3}) && accept(Rule::N3ggN4, 2.0 * k[1] * k[3])) return out;
  }
  // Two high frequencies of opposite sign, not nearly cancelling.
  if (top_mask(ct, 2) == bits({0, 1}) && cmp.ll(N3, N1) && k[0] * k[1] < 0 &&
      out.witness_lhs > th.gap * out.witness_rhs) {
    if (accept(Rule::Bilinear, k[0] * k[0] - k[1] * k[1])) return out;
  }
  // Four comparable high frequencies above a low fifth.
  const bool four_high = cmp.sim(N4, N1) && cmp.ll(N5, N4);
  if (four_high) {
    const int t4 = top_mask(ct, 4);
    const double tol = N1 / th.gap;
    if (t4 == bits({0, 1, 3, 5})) {
      if (sgn(k[1]) == sgn(k[3]) && sgn(k[3]) == sgn(k[5])) {
        if (accept(Rule::Signs, 2.0 * (k[1] * k[3] + k[1] * k[5] + k[3] * k[5]))) return out;
      } else {
        const int ev[3] = {1, 3, 5};
        for (int a = 0; a < 3; ++a) {
          const int i = ev[a];
          const bool close = sgn(k[i]) == sgn(k[0]) ? std::abs(k[i] - k[0]) <= tol : std::abs(k[i] + k[0]) <= tol;
          if (!close) continue;
          double rest = 0.0;
          for (int b : ev)
            if (b != i) rest += k[b] * k[b];
          if (accept(Rule::Signs, -rest)) return out;
          break;
        }
      }
    } else if (t4 == bits({0, 1, 2, 4})) {
      if (sgn(k[0]) == sgn(k[2]) && sgn(k[2]) == sgn(k[4])) {
        if (accept(Rule::Signs, -2.0 * (k[0] * k[2] + k[0] * k[4] + k[2] * k[4]))) return out;
      } else {
        const int od[3] = {0, 2, 4};
        for (int a = 0; a < 3; ++a) {
          const int i = od[a];
          const bool close = sgn(k[i]) == sgn(k[1]) ? std::abs(k[i] - k[1]) <= tol : std::abs(k[i] + k[1]) <= tol;
          if (!close) continue;
          double rest = 0.0;
          for (int b : od)
            if (b != i) rest += k[b] * k[b];
          if (accept(Rule::Signs, rest)) return out;
          break;
        }
      }
    }
  }
  out.verdict = Verdict::Resonant;
  if (cmp.sim(N5, N1)) {
    out.rcase = ResonantCase::III;
  } else if (cmp.sim(N4, N1)) {
    out.rcase = ResonantCase::II;
  } else {
    out.rcase = ResonantCase::I;
  }
  return out;
}

Classification classify_2d(const CanonicalTuple& ct, double N, const Thresholds& th) {
  Classification out;
  const Cmp cmp{th.gap};
  const auto& c = ct.c;
  out.omega = omega_raw(c.data(), 4);
  const double N1 = ct.nstar(0), N3 = ct.nstar(2);
  out.witness_lhs = std::hypot(c[0][0] + c[1][0], c[0][1] + c[1][1]);
  out.witness_rhs = N3 * N3 / N1;
  if (!in_upsilon(c.data(), 4, N)) return out;
  if (top_mask(ct, 2) == bits({0, 2}) && cmp.sim(ct.label[0], ct.label[2]) && cmp.ll(N3, ct.label[2])) {
    const double main = norm2(c[0]) + norm2(c[2]);
    if (certified(out.omega, main, th.dominance)) {
      out.verdict = Verdict::NonResonant;
      out.rule = Rule::Atilde2d;
      out.main_term = main;
      return out;
    }
    out.demoted = Rule::Atilde2d;
  }
  out.verdict = Verdict::Resonant;
  out.rcase = ResonantCase::TwoD;
  return out;
}

}  // namespace

Classification classify_canonical(const CanonicalTuple& c, double N, const Thresholds& th) {
  if (c.d == 1) {
    if (c.n != 6) throw ValidationError("n", "the 1d classifier acts on Gamma_6");
    return classify_1d(c, N, th);
  }
  if (c.n != 4) throw ValidationError("n", "the 2d classifier acts on Gamma_4");
  return classify_2d(c, N, th);
}

Classification classify(const Vec2* k, int n, int d, double N, const Thresholds& th) {
  if (n != 4 && n != 6) throw ValidationError("n", "classification needs n in {4, 6}");
  if (!(th.gap > 1.0) || !(th.dominance > 1.0)) throw ValidationError("gap_factor", "G and D must exceed 1");
  return classify_canonical(canonicalize(k, n, d), N, th);
}

Classification classify(const FrequencyTuple& t, double N, const Thresholds& th) {
  return classify(t.k.data(), t.n(), t.d, N, th);
}

}  // namespace nlslab
