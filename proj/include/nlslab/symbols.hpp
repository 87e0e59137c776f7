#pragma once

#include <functional>
#include <string>

#include "nlslab/classify.hpp"
#include "nlslab/symbol.hpp"
#include "nlslab/tuple.hpp"

namespace nlslab {

enum class SymbolName {
  Omega4, Omega6, Alpha, M4, M6,
  Sigma2, Sigma4, Sigma6,
  SigmaTilde4, SigmaTilde6, MTilde6,
  MBar6, MBar4, MBar6_2d, MBar10,
  Substituted,
};

const char* symbol_name(SymbolName s);

// sign = +1 defocusing, -1 focusing.
struct SymbolParams {
  double N = 1.0;
  double s = 0.5;
  int d = 1;
  int sign = +1;
  Thresholds thresholds;
  SmoothingSymbol smoothing() const { return make_symbol(N, 1.0 - s); }
};

// Raw primitives (Omega, Alpha, M4, M6, Sigma2/4/6) evaluate to the bare
// expressions: Sigma2 = m(k1) m(k2) k1.k2, Sigma4/6 = prod m(k_i),
// M = sum (-1)^{i+1} m^2 |k_i|^2. The constant in front of each one is
// applied by the Lambda layer (see lambda_prefactor). Composite symbols
// (tilde, bar, substituted) return complete values.
struct SymbolSpec {
  SymbolName name = SymbolName::Omega6;
  SymbolParams params;
  int arity = 6;
  bool factorizable = false;
  std::string label;
  std::function<cd(const Vec2*)> eval;

  cd operator()(const Vec2* k) const { return eval(k); }
  cd operator()(const FrequencyTuple& t) const;
};

SymbolSpec make_symbol_spec(SymbolName name, const SymbolParams& p, int arity = 0);

// Constant the Lambda layer multiplies a raw primitive by:
// Sigma2 -1/2, Sigma6 1/6, Sigma4 1/4, M6 sign*i/6, M4 sign*i/4, otherwise 1.
cd lambda_prefactor(SymbolName name, int sign);

// X_j: collapse the `width` consecutive arguments j..j+width-1 (1-based) of a
// tuple on Gamma_{n+width-1} into their sum and evaluate the base symbol.
SymbolSpec x_substitute(const SymbolSpec& base, int j, int width);

// Degree of the nonlinearity |u|^{4/d} u.
inline int nonlinearity_degree(int d) { return d == 1 ? 5 : 3; }

// Correction symbol, its numerator and the resonant parts, with full prefactors.
cd sigma_tilde(const Vec2* k, const SymbolParams& p);
cd m_tilde(const Vec2* k, const SymbolParams& p);
cd m_bar(const Vec2* k, const SymbolParams& p);
cd sigma_tilde(const FrequencyTuple& t, const SymbolParams& p);

}  // namespace nlslab
