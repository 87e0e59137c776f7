#pragma once

#include <array>
#include <string>

#include "nlslab/tuple.hpp"

namespace nlslab {

// Comparators on dyadic labels: a << b iff a <= b / G; a ~ b iff neither a << b
// nor b << a. Non-resonance rules additionally require a certificate
// |Omega - main| <= |main| / D for the rule's leading term `main`.
struct Thresholds {
  double gap = 4.0;        // G
  double dominance = 2.0;  // D
};

enum class Verdict { BelowThreshold, Resonant, NonResonant };
enum class ResonantCase { None, I, II, III, TwoD };
enum class Rule { None, N2llN1, N3ggN4, Bilinear, Signs, Atilde2d };

const char* rule_name(Rule r);        // e.g. "N2llN1"
const char* case_name(ResonantCase c);  // "i", "ii", "iii", "2d"

// Canonical representative of the orbit of a tuple under permutations inside
// the odd and even groups and under swapping the two groups (which negates
// Omega and the M symbols but leaves their ratio and the verdict unchanged).
struct CanonicalTuple {
  int d = 1;
  int n = 6;
  std::array<Vec2, 6> c{};
  bool swapped = false;  // groups were exchanged
  std::array<double, 6> mag{};
  std::array<int, 6> label{};
  std::array<int, 6> order{};  // positions sorted by magnitude, decreasing
  int nstar(int r) const { return label[order[r]]; }
  double kstar(int r) const { return mag[order[r]]; }
};

CanonicalTuple canonicalize(const Vec2* k, int n, int d);

struct Classification {
  Verdict verdict = Verdict::BelowThreshold;
  ResonantCase rcase = ResonantCase::None;
  Rule rule = Rule::None;
  Rule demoted = Rule::None;  // structural hypotheses held but the certificate failed
  double omega = 0.0;         // in canonical orientation
  double main_term = 0.0;
  double witness_lhs = 0.0;   // |k1 + k2| of the two top frequencies
  double witness_rhs = 0.0;   // (N3*)^2 / N1*
  std::string describe() const;
};

Classification classify_canonical(const CanonicalTuple& c, double N, const Thresholds& th);
Classification classify(const Vec2* k, int n, int d, double N, const Thresholds& th);
Classification classify(const FrequencyTuple& t, double N, const Thresholds& th = {});

// Upsilon: some |k_i| >= N. Off Upsilon every m(k_i) = 1.
bool in_upsilon(const Vec2* k, int n, double N);

}  // namespace nlslab
