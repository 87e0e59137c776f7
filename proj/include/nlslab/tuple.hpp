#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/symbol.hpp"

namespace nlslab {

// A point of Gamma_n: physical frequencies k_1..k_n with sum zero. Odd slots
// (1-based) carry u, even slots carry conj(u).
struct FrequencyTuple {
  int d = 1;
  std::vector<Vec2> k;

  int n() const { return static_cast<int>(k.size()); }
  double mag2(int i) const { return k[i][0] * k[i][0] + k[i][1] * k[i][1]; }
  double mag(int i) const;
  // Sharp dyadic labels N_i and their decreasing rearrangement N_1* >= ... >= N_n*.
  std::vector<int> shells() const;
  std::vector<int> sorted_shells() const;
  std::string str() const;
};

// Validates n in {2, 4, 6, 10} and sum zero up to tol.
FrequencyTuple make_tuple(int d, std::vector<Vec2> k, double tol = 1e-9);
FrequencyTuple tuple_1d(std::initializer_list<double> k);
FrequencyTuple tuple_1d(const std::vector<double>& k);
// Integer mode indices on a geometry, mapped to physical frequencies.
FrequencyTuple tuple_from_modes(const TorusGeometry& g, const std::vector<Mode>& modes);

// Omega_n = sum_i (-1)^{i+1} |k_i|^2 (1-based i), for n in {4, 6}.
double omega(const FrequencyTuple& t);
// alpha_n = i sum_j (-1)^j |k_j|^2 (any even n).
cd alpha(const FrequencyTuple& t);
// sum_i (-1)^{i+1} m^2(k_i) |k_i|^2, for n in {4, 6}.
double m_multiplier(const FrequencyTuple& t, const SmoothingSymbol& sym);

// Same quantities on raw arrays (no validation).
double omega_raw(const Vec2* k, int n);
double m_multiplier_raw(const Vec2* k, int n, const SmoothingSymbol& sym);

}  // namespace nlslab
