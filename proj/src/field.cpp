#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

SpectralField::SpectralField(TorusGeometry g, int K) : SpectralField(std::move(g), {K, K}) {}

SpectralField::SpectralField(TorusGeometry g, std::array<int, 2> K) : geom_(std::move(g)), K_(K) {
  if (geom_.dimension == 1) K_[1] = 0;
  for (int a = 0; a < geom_.dimension; ++a)
    if (K_[a] < 0) throw ValidationError("mode_cutoff", "must be >= 0, got " + std::to_string(K_[a]));
  coeffs_.assign(static_cast<std::size_t>(extent(0)) * extent(1), cd{});
}

bool SpectralField::contains(const Mode& n) const {
  if (std::abs(n[0]) > K_[0]) return false;
  return dim() == 1 ? n[1] == 0 : std::abs(n[1]) <= K_[1];
}

std::size_t SpectralField::index(const Mode& n) const {
  if (dim() == 1) return static_cast<std::size_t>(n[0] + K_[0]);
  return static_cast<std::size_t>(n[0] + K_[0]) * extent(1) + static_cast<std::size_t>(n[1] + K_[1]);
}

Mode SpectralField::mode(std::size_t idx) const {
  if (dim() == 1) return {static_cast<int>(idx) - K_[0], 0};
  const int e1 = extent(1);
  return {static_cast<int>(idx / e1) - K_[0], static_cast<int>(idx % e1) - K_[1]};
}

Vec2 frequency(const TorusGeometry& g, const Mode& n) {
  Vec2 k{n[0] / g.period_scale(0), 0.0};
  if (g.dimension == 2) k[1] = n[1] / g.period_scale(1);
  return k;
}

double freq_norm2(const TorusGeometry& g, const Mode& n) {
  const Vec2 k = frequency(g, n);
  return k[0] * k[0] + k[1] * k[1];
}

Vec2 SpectralField::frequency(std::size_t idx) const { return nlslab::frequency(geom_, mode(idx)); }
Vec2 SpectralField::frequency(const Mode& n) const { return nlslab::frequency(geom_, n); }
double SpectralField::freq_norm2(std::size_t idx) const { return nlslab::freq_norm2(geom_, mode(idx)); }

bool SpectralField::same_lattice(const SpectralField& o) const {
  return geom_ == o.geom_ && K_ == o.K_;
}

SpectralField SpectralField::with_cutoff(std::array<int, 2> K) const {
  SpectralField out(geom_, K);
  for (std::size_t i = 0; i < out.size(); ++i) out.coeffs_[i] = value_or_zero(out.mode(i));
  return out;
}

SpectralField SpectralField::conjugate() const {
  SpectralField out(geom_, K_);
  for (std::size_t i = 0; i < size(); ++i) {
    const Mode n = mode(i);
    out.coeffs_[i] = std::conj(coeffs_[index({-n[0], -n[1]})]);
  }
  return out;
}

static void require_same(const SpectralField& a, const SpectralField& b) {
  if (!a.same_lattice(b)) throw ValidationError("field", "lattice mismatch");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same(a, b);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.coeffs()[i] += b.coeffs()[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same(a, b);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.coeffs()[i] -= b.coeffs()[i];
  return out;
}

SpectralField operator*(cd c, const SpectralField& a) {
  SpectralField out = a;
  for (auto& v : out.coeffs()) v *= c;
  return out;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  require_same(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

}  // namespace nlslab
