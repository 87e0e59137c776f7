#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "nlslab/geometry.hpp"

namespace nlslab {

using cd = std::complex<double>;
using Mode = std::array<int, 2>;
using Vec2 = std::array<double, 2>;

// Fourier coefficients f^(k) on the truncated lattice |n_a| <= K_a.
// Storage is row-major with axis 0 slowest; index n_a is offset by K_a.
class SpectralField {
public:
  SpectralField() = default;
  SpectralField(TorusGeometry g, int K);
  SpectralField(TorusGeometry g, std::array<int, 2> K);

  const TorusGeometry& geometry() const { return geom_; }
  int dim() const { return geom_.dimension; }
  const std::array<int, 2>& cutoff() const { return K_; }
  int extent(int axis) const { return axis < dim() ? 2 * K_[axis] + 1 : 1; }
  std::size_t size() const { return coeffs_.size(); }

  std::vector<cd>& coeffs() { return coeffs_; }
  const std::vector<cd>& coeffs() const { return coeffs_; }

  bool contains(const Mode& n) const;
  std::size_t index(const Mode& n) const;
  Mode mode(std::size_t idx) const;
  Vec2 frequency(std::size_t idx) const;
  Vec2 frequency(const Mode& n) const;
  double freq_norm2(std::size_t idx) const;

  cd& operator[](const Mode& n) { return coeffs_[index(n)]; }
  const cd& operator[](const Mode& n) const { return coeffs_[index(n)]; }
  cd value_or_zero(const Mode& n) const { return contains(n) ? coeffs_[index(n)] : cd{}; }

  bool same_lattice(const SpectralField& o) const;
  // Copy onto another cutoff, truncating or zero-padding.
  SpectralField with_cutoff(std::array<int, 2> K) const;
  // (f-bar)^(k) = conj(f^(-k)), the coefficient array of the conjugate function.
  SpectralField conjugate() const;

private:
  TorusGeometry geom_;
  std::array<int, 2> K_{0, 0};
  std::vector<cd> coeffs_;
};

double freq_norm2(const TorusGeometry& g, const Mode& n);
Vec2 frequency(const TorusGeometry& g, const Mode& n);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cd c, const SpectralField& a);

double max_abs_diff(const SpectralField& a, const SpectralField& b);

}  // namespace nlslab
