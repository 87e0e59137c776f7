#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "nlslab/symbols.hpp"

namespace nlslab {

struct Interval {
  double center = 0.0;
  double length = 1.0;
};

struct MultiplierBox {
  std::vector<Interval> intervals;
  double volume() const;  // prod L_i
  bool contains(const std::vector<double>& k) const;
};

// Intervals of the given lengths centred at the entries of a 1d tuple.
MultiplierBox box_around(const FrequencyTuple& t, const std::vector<double>& lengths);

struct FourierOptions {
  int nodes = 0;            // Gauss-Legendre nodes per axis; 0 picks max(128, 8 trunc)
  int smoothness = 8;       // q in the <xi>^q weight of the minimum-norm extension
  double svd_cutoff = 1e-13;
  double tolerance = 1e-6;  // allowed disagreement between the two node counts
};

// Expansion F(k) = (1 / prod L_i) sum_xi m(xi) exp(i sum_i k_i xi_i / L_i) of
// a box-localized symbol on the period 2 pi L_i per axis, with |xi_i| <= trunc.
// Only symbols that split on the box as a sum or a product of one-variable
// factors are supported; each factor is extended off its interval by the
// trigonometric polynomial of least weighted norm sum <xi>^{2q} |a_xi|^2
// among least-squares fits at the Gauss-Legendre nodes of the interval.
struct FourierExpansion {
  int n = 0;
  int trunc = 0;
  bool additive = true;
  MultiplierBox box;
  cd center_value{};
  std::vector<std::vector<cd>> axis;  // axis[i][xi + trunc]: one-variable coefficients
  std::function<cd(const double*)> symbol;  // the (trivially extended) symbol that was expanded

  std::vector<double> envelope;  // E(j) = max |m(xi)| over max_i |xi_i| = j, j = 0..trunc
  double decay_slope = 0.0;      // fitted p in E(j) ~ <j>^{-p} over j = 1..trunc (+inf if the tail vanishes)
  double symbol_sup = 0.0;       // max |F| over sampled box points
  double resolution_gap = 0.0;   // relative difference of the reconstructions at two node counts

  cd coefficient(const std::vector<int>& xi) const;
  cd evaluate(const double* k) const;
  // sum |m(xi)| / prod L_i, an upper bound for sup |F| on the box.
  double abs_sum() const;
  // max |m(xi)| / (prod L_i sup |F|).
  double normalized_max() const;
  nlohmann::json report() const;
};

FourierExpansion fourier_expand(const SymbolSpec& sym, const MultiplierBox& box, int trunc,
                                const FourierOptions& opt = {});

// max |F(k) - expansion(k)| / sup |F| over `samples` random interior points.
double reconstruction_error(const FourierExpansion& e, int samples = 2000, std::uint64_t seed = 1);

// Decay exponent between two truncations: log2 of the ratio of the envelope
// maxima over trunc/2 < j <= trunc and trunc < j <= 2 trunc.
double two_truncation_slope(const SymbolSpec& sym, const MultiplierBox& box, int trunc,
                            const FourierOptions& opt = {});

}  // namespace nlslab
