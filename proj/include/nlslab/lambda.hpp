#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/symbols.hpp"

namespace nlslab {

enum class LambdaStrategy { Direct, Physical };

// Lambda_n(M; f_1..f_n) = w^{n-1} sum over Gamma_n of M(k) prod_i c_i(k_i), where
// c_i = f_i^ on odd slots and c_i(k) = conj(f_i^(-k)) (the coefficients of
// conj(f_i)) on even slots. The result includes lambda_prefactor(sym.name).
// Direct sums n-1 free slots over each field's lattice; Physical integrates
// prod_i g_i(D) f_i on an alias-free grid and needs a factorizable symbol.
cd lambda_eval(const SymbolSpec& sym, const std::vector<SpectralField>& fields,
               LambdaStrategy strategy = LambdaStrategy::Direct);
// All slots carry u.
cd lambda_eval(const SymbolSpec& sym, const SpectralField& u, LambdaStrategy strategy = LambdaStrategy::Direct);

// Direct sum restricted to tuples accepted by `keep` (mode indices), without prefactor.
cd lambda_direct_raw(const std::function<cd(const Vec2*)>& sym, int n, const std::vector<SpectralField>& fields,
                     const std::function<bool(const Mode*)>& keep = nullptr);

// Cost guard shared by the direct sums and the census (number of summed tuples).
inline constexpr double kDirectSumGuard = 1e9;

// Lambda_n of a real symbol that is symmetric inside the odd and inside the
// even group of slots. Entries are pairs (A, B) of multisets of lattice points
// with sum(A) + sum(B) = 0; the value stored is sym(A, B) and the field enters
// through F(A) = perm(A) prod_{a in A} u^(a) and the analogous G(B) built from
// conj(u). This makes evaluation O(entries) instead of O(lattice^{n-1}).
class SymmetricTable {
public:
  SymmetricTable(const TorusGeometry& g, std::array<int, 2> K, int n,
                 const std::function<double(const Vec2*)>& sym, double max_entries = 2e8);

  int n() const { return n_; }
  std::size_t entries() const { return v_.size(); }
  std::size_t multisets() const { return sets_.size() / m_; }

  // w^{n-1} sum sym F G.
  cd contract(const SpectralField& u) const;
  // sum_j (-1)^j Lambda_n(sym; u, .., slot j <- h, .., u) where on even slots
  // the substituted coefficients are those of conj(h).
  cd contract_substituted(const SpectralField& u, const SpectralField& h) const;

private:
  void group_values(const std::vector<cd>& c, std::vector<double>& re, std::vector<double>& im) const;
  void group_values_sub(const std::vector<cd>& c, const std::vector<cd>& hc, std::vector<double>& re,
                        std::vector<double>& im) const;
  cd sum(const std::vector<double>& fre, const std::vector<double>& fim, const std::vector<double>& gre,
         const std::vector<double>& gim) const;

  TorusGeometry geom_;
  std::array<int, 2> K_;
  int n_, m_;
  std::vector<std::int32_t> sets_;  // m lattice indices per multiset
  std::vector<double> perm_;        // number of distinct orderings
  std::vector<std::int32_t> ia_, ib_;
  std::vector<double> v_;
};

// Odd-slot and even-slot coefficient arrays of u on its own lattice.
std::vector<cd> odd_coefficients(const SpectralField& u);
std::vector<cd> even_coefficients(const SpectralField& u);

}  // namespace nlslab
