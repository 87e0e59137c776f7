#include <immintrin.h>

#include "nlslab/kernels.hpp"

// Complex values are interleaved (re, im); one __m256d holds two of them.
namespace nlslab::kernels::avx2 {

namespace {

inline __m256d load2(const cd* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cd* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// [r0,i0,r1,i1] -> [|z0|^2, |z0|^2, |z1|^2, |z1|^2]
inline __m256d abs2_dup(__m256d v) {
  const __m256d sq = _mm256_mul_pd(v, v);
  return _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
}

inline __m256d ipow(__m256d a, int q) {
  __m256d r = _mm256_set1_pd(1.0);
  for (int i = 0; i < q; ++i) r = _mm256_mul_pd(r, a);
  return r;
}

// Sum of lanes 0 and 2 (one copy of each duplicated pair), fixed order.
inline double sum_even_lanes(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

}  // namespace

void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(u + i);
    store2(out + i, _mm256_mul_pd(ipow(abs2_dup(v), q), v));
  }
  if (i < n) scalar::power_nonlinearity(u + i, out + i, n - i, q);
}

void cmul(cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = load2(a + i);
    const __m256d y = load2(b + i);
    const __m256d yr = _mm256_movedup_pd(y);
    const __m256d yi = _mm256_permute_pd(y, 0xF);
    const __m256d xs = _mm256_permute_pd(x, 0x5);
    store2(a + i, _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi)));
  }
  if (i < n) scalar::cmul(a + i, b + i, n - i);
}

double sum_abs_pow(const cd* u, std::size_t n, int q) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, ipow(abs2_dup(load2(u + i)), q));
  double s = sum_even_lanes(acc);
  if (i < n) s += scalar::sum_abs_pow(u + i, n - i, q);
  return s;
}

double sum_abs2_product(const cd* a, const cd* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = _mm256_fmadd_pd(abs2_dup(load2(a + i)), abs2_dup(load2(b + i)), acc);
  double s = sum_even_lanes(acc);
  if (i < n) s += scalar::sum_abs2_product(a + i, b + i, n - i);
  return s;
}

cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t e = 0;
  for (; e + 4 <= n; e += 4) {
    const __m128i xa = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ia + e));
    const __m128i xb = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ib + e));
    const __m256d a = _mm256_i32gather_pd(fre, xa, 8);
    const __m256d b = _mm256_i32gather_pd(fim, xa, 8);
    const __m256d c = _mm256_i32gather_pd(gre, xb, 8);
    const __m256d d = _mm256_i32gather_pd(gim, xb, 8);
    const __m256d w = _mm256_loadu_pd(v + e);
    const __m256d pr = _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d));
    const __m256d pi = _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c));
    accr = _mm256_fmadd_pd(w, pr, accr);
    acci = _mm256_fmadd_pd(w, pi, acci);
  }
  cd s(hsum(accr), hsum(acci));
  if (e < n) s += scalar::contract(ia + e, ib + e, v + e, n - e, fre, fim, gre, gim);
  return s;
}

}  // namespace nlslab::kernels::avx2
