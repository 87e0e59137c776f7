#include "nlslab/kernels.hpp"

namespace nlslab::kernels::scalar {

static inline double ipow(double a, int q) {
  double r = 1.0;
  for (int i = 0; i < q; ++i) r *= a;
  return r;
}

void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = u[i].real(), im = u[i].imag();
    const double a = ipow(re * re + im * im, q);
    out[i] = cd(a * re, a * im);
  }
}

void cmul(cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
    a[i] = cd(ar * br - ai * bi, ar * bi + ai * br);
  }
}

double sum_abs_pow(const cd* u, std::size_t n, int q) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = u[i].real(), im = u[i].imag();
    s += ipow(re * re + im * im, q);
  }
  return s;
}

double sum_abs2_product(const cd* a, const cd* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]) * std::norm(b[i]);
  return s;
}

cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim) {
  double sr = 0.0, si = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    const double a = fre[ia[e]], b = fim[ia[e]], c = gre[ib[e]], d = gim[ib[e]];
    sr += v[e] * (a * c - b * d);
    si += v[e] * (a * d + b * c);
  }
  return {sr, si};
}

}  // namespace nlslab::kernels::scalar
