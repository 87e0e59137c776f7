#include "nlslab/symbols.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nlslab/errors.hpp"

namespace nlslab {

const char* symbol_name(SymbolName s) {
  switch (s) {
    case SymbolName::Omega4: return "Omega4";
    case SymbolName::Omega6: return "Omega6";
    case SymbolName::Alpha: return "Alpha_n";
    case SymbolName::M4: return "M4";
    case SymbolName::M6: return "M6";
    case SymbolName::Sigma2: return "Sigma2";
    case SymbolName::Sigma4: return "Sigma4";
    case SymbolName::Sigma6: return "Sigma6";
    case SymbolName::SigmaTilde4: return "SigmaTilde4";
    case SymbolName::SigmaTilde6: return "SigmaTilde6";
    case SymbolName::MTilde6: return "MTilde6";
    case SymbolName::MBar6: return "MBar6";
    case SymbolName::MBar4: return "MBar4";
    case SymbolName::MBar6_2d: return "MBar6_2d";
    case SymbolName::MBar10: return "MBar10";
    case SymbolName::Substituted: return "X_j";
  }
  return "?";
}

cd SymbolSpec::operator()(const FrequencyTuple& t) const {
  if (t.n() != arity) throw ValidationError("tuple", std::string(label) + " expects " + std::to_string(arity) + " frequencies");
  return eval(t.k.data());
}

cd lambda_prefactor(SymbolName name, int sign) {
  switch (name) {
    case SymbolName::Sigma2: return -0.5;
    case SymbolName::Sigma6: return 1.0 / 6.0;
    case SymbolName::Sigma4: return 0.25;
    case SymbolName::M6: return cd(0.0, sign / 6.0);
    case SymbolName::M4: return cd(0.0, sign / 4.0);
    default: return 1.0;
  }
}

namespace {

double mag(const Vec2& v) { return std::hypot(v[0], v[1]); }

double prod_m(const Vec2* k, int n, const SmoothingSymbol& ms) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= m_value(mag(k[i]), ms);
  return p;
}

int base_arity(int d) { return d == 1 ? 6 : 4; }

struct Parts {
  bool upsilon = false;
  bool nonresonant = false;
  double prod = 1.0;
  double mraw = 0.0;
  double omega = 0.0;
};

Parts parts(const Vec2* k, const SymbolParams& p) {
  const int n = base_arity(p.d);
  Parts r;
  r.upsilon = in_upsilon(k, n, p.N);
  if (!r.upsilon) return r;
  const auto ms = p.smoothing();
  const auto cls = classify(k, n, p.d, p.N, p.thresholds);
  r.nonresonant = cls.verdict == Verdict::NonResonant;
  r.prod = prod_m(k, n, ms);
  r.mraw = m_multiplier_raw(k, n, ms);
  r.omega = omega_raw(k, n);
  if (r.nonresonant && r.omega == 0.0)
    throw ConsistencyError("non-resonant verdict on a tuple with Omega = 0");
  return r;
}

}  // namespace

cd sigma_tilde(const Vec2* k, const SymbolParams& p) {
  const Parts r = parts(k, p);
  if (!r.upsilon) return 0.0;
  const double c = p.sign / static_cast<double>(base_arity(p.d));
  double v = -c * r.prod;
  if (r.nonresonant) v += c * r.mraw / r.omega;
  return v;
}

cd sigma_tilde(const FrequencyTuple& t, const SymbolParams& p) {
  if (t.d != p.d || t.n() != base_arity(p.d)) throw ValidationError("tuple", "sigma_tilde expects Gamma_6 (d=1) or Gamma_4 (d=2)");
  return sigma_tilde(t.k.data(), p);
}

cd m_tilde(const Vec2* k, const SymbolParams& p) {
  const Parts r = parts(k, p);
  if (!r.upsilon) return 0.0;
  const double c = p.sign / static_cast<double>(base_arity(p.d));
  const cd alpha(0.0, -r.omega);
  cd v = c * r.prod * alpha;
  if (r.nonresonant) v += cd(0.0, c * r.mraw);
  return v;
}

cd m_bar(const Vec2* k, const SymbolParams& p) {
  const Parts r = parts(k, p);
  if (!r.upsilon || r.nonresonant) return 0.0;
  const double c = p.sign / static_cast<double>(base_arity(p.d));
  return cd(0.0, c * r.mraw);
}

SymbolSpec x_substitute(const SymbolSpec& base, int j, int width) {
  if (width < 1 || width % 2 == 0) throw ValidationError("width", "must be odd and positive");
  if (j < 1 || j > base.arity) throw ValidationError("j", "index " + std::to_string(j) + " out of range 1.." + std::to_string(base.arity));
  SymbolSpec out;
  out.name = SymbolName::Substituted;
  out.params = base.params;
  out.arity = base.arity + width - 1;
  out.label = "X_" + std::to_string(j) + "(" + base.label + ")";
  const int n0 = base.arity;
  out.eval = [base, j, width, n0](const Vec2* k) {
    Vec2 buf[16];
    for (int i = 0; i < j - 1; ++i) buf[i] = k[i];
    Vec2 s{0.0, 0.0};
    for (int i = j - 1; i < j - 1 + width; ++i) {
      s[0] += k[i][0];
      s[1] += k[i][1];
    }
    buf[j - 1] = s;
    for (int i = j; i < n0; ++i) buf[i] = k[i + width - 1];
    return base.eval(buf);
  };
  return out;
}

namespace {

// i sum_j (-1)^j [X_j(sigma_full) + sign X_j(sigma_tilde)] on Gamma_{n+p-1}.
cd nested_bar(const Vec2* k, const SymbolParams& p) {
  const int n = base_arity(p.d);
  const int width = nonlinearity_degree(p.d);
  const auto ms = p.smoothing();
  cd acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    Vec2 buf[6];
    for (int i = 0; i < j - 1; ++i) buf[i] = k[i];
    Vec2 s{0.0, 0.0};
    for (int i = j - 1; i < j - 1 + width; ++i) {
      s[0] += k[i][0];
      s[1] += k[i][1];
    }
    buf[j - 1] = s;
    for (int i = j; i < n; ++i) buf[i] = k[i + width - 1];
    const cd full = prod_m(buf, n, ms) / static_cast<double>(n);
    const cd term = full + static_cast<double>(p.sign) * sigma_tilde(buf, p);
    acc += (j % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return cd(0.0, 1.0) * acc;
}

}  // namespace

SymbolSpec make_symbol_spec(SymbolName name, const SymbolParams& p, int arity) {
  if (p.d != 1 && p.d != 2) throw ValidationError("d", "must be 1 or 2");
  SymbolSpec s;
  s.name = name;
  s.params = p;
  s.label = symbol_name(name);
  const auto ms = p.smoothing();
  auto need_d = [&](int d) {
    if (p.d != d) throw ValidationError("d", std::string(symbol_name(name)) + " is defined for d = " + std::to_string(d));
  };
  switch (name) {
    case SymbolName::Omega4:
    case SymbolName::Omega6: {
      const int n = name == SymbolName::Omega4 ? 4 : 6;
      s.arity = n;
      s.eval = [n](const Vec2* k) { return cd(omega_raw(k, n)); };
      break;
    }
    case SymbolName::Alpha: {
      if (arity < 2 || arity % 2) throw ValidationError("n", "Alpha_n needs an even arity >= 2");
      s.arity = arity;
      s.label = "Alpha" + std::to_string(arity);
      s.eval = [arity](const Vec2* k) { return cd(0.0, -omega_raw(k, arity)); };
      break;
    }
    case SymbolName::M4:
    case SymbolName::M6: {
      const int n = name == SymbolName::M4 ? 4 : 6;
      s.arity = n;
      s.eval = [n, ms](const Vec2* k) { return cd(m_multiplier_raw(k, n, ms)); };
      break;
    }
    case SymbolName::Sigma2:
      s.arity = 2;
      s.factorizable = true;
      s.eval = [ms](const Vec2* k) {
        return cd(m_value(mag(k[0]), ms) * m_value(mag(k[1]), ms) * (k[0][0] * k[1][0] + k[0][1] * k[1][1]));
      };
      break;
    case SymbolName::Sigma4:
    case SymbolName::Sigma6: {
      const int n = name == SymbolName::Sigma4 ? 4 : 6;
      s.arity = n;
      s.factorizable = true;
      s.eval = [n, ms](const Vec2* k) { return cd(prod_m(k, n, ms)); };
      break;
    }
    case SymbolName::SigmaTilde4:
    case SymbolName::SigmaTilde6:
      need_d(name == SymbolName::SigmaTilde4 ? 2 : 1);
      s.arity = base_arity(p.d);
      s.eval = [p](const Vec2* k) { return sigma_tilde(k, p); };
      break;
    case SymbolName::MTilde6:
      need_d(1);
      s.arity = 6;
      s.eval = [p](const Vec2* k) { return m_tilde(k, p); };
      break;
    case SymbolName::MBar6:
    case SymbolName::MBar4:
      need_d(name == SymbolName::MBar4 ? 2 : 1);
      s.arity = base_arity(p.d);
      s.eval = [p](const Vec2* k) { return m_bar(k, p); };
      break;
    case SymbolName::MBar10:
    case SymbolName::MBar6_2d:
      need_d(name == SymbolName::MBar6_2d ? 2 : 1);
      s.arity = base_arity(p.d) + nonlinearity_degree(p.d) - 1;
      s.eval = [p](const Vec2* k) { return nested_bar(k, p); };
      break;
    case SymbolName::Substituted:
      throw ValidationError("name", "use x_substitute to build substituted symbols");
  }
  return s;
}

}  // namespace nlslab
