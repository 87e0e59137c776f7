#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Data-parallel inner loops. Each kernel has a scalar reference version and an
// AVX2/FMA version; the active one is picked at startup from CPU support and
// the NLSLAB_SIMD environment variable ("scalar" or "avx2").
namespace nlslab::kernels {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2 };

bool avx2_supported();
Isa active();
void set_active(Isa isa);
const char* name(Isa isa);

// out[i] = |u[i]|^(2q) u[i]; out may alias u.
void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q);
// a[i] *= b[i]
void cmul(cd* a, const cd* b, std::size_t n);
// sum_i |u[i]|^(2q)
double sum_abs_pow(const cd* u, std::size_t n, int q);
// sum_i |a[i]|^2 |b[i]|^2
double sum_abs2_product(const cd* a, const cd* b, std::size_t n);
// sum_e v[e] F[ia[e]] G[ib[e]] with F, G given as split real/imaginary arrays.
cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim);

namespace scalar {
void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q);
void cmul(cd* a, const cd* b, std::size_t n);
double sum_abs_pow(const cd* u, std::size_t n, int q);
double sum_abs2_product(const cd* a, const cd* b, std::size_t n);
cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim);
}  // namespace scalar

namespace avx2 {
void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q);
void cmul(cd* a, const cd* b, std::size_t n);
double sum_abs_pow(const cd* u, std::size_t n, int q);
double sum_abs2_product(const cd* a, const cd* b, std::size_t n);
cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim);
}  // namespace avx2

}  // namespace nlslab::kernels
