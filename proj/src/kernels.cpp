#include "nlslab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab::kernels {

namespace {

Isa initial_isa() {
  const bool have = avx2_supported();
  if (const char* env = std::getenv("NLSLAB_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && have) return Isa::Avx2;
  }
  return have ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active() { return current().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported())
    throw ValidationError("simd", "AVX2/FMA not supported on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

const char* name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void power_nonlinearity(const cd* u, cd* out, std::size_t n, int q) {
  active() == Isa::Avx2 ? avx2::power_nonlinearity(u, out, n, q) : scalar::power_nonlinearity(u, out, n, q);
}

void cmul(cd* a, const cd* b, std::size_t n) {
  active() == Isa::Avx2 ? avx2::cmul(a, b, n) : scalar::cmul(a, b, n);
}

double sum_abs_pow(const cd* u, std::size_t n, int q) {
  return active() == Isa::Avx2 ? avx2::sum_abs_pow(u, n, q) : scalar::sum_abs_pow(u, n, q);
}

double sum_abs2_product(const cd* a, const cd* b, std::size_t n) {
  return active() == Isa::Avx2 ? avx2::sum_abs2_product(a, b, n) : scalar::sum_abs2_product(a, b, n);
}

cd contract(const std::int32_t* ia, const std::int32_t* ib, const double* v, std::size_t n,
            const double* fre, const double* fim, const double* gre, const double* gim) {
  return active() == Isa::Avx2 ? avx2::contract(ia, ib, v, n, fre, fim, gre, gim)
                               : scalar::contract(ia, ib, v, n, fre, fim, gre, gim);
}

}  // namespace nlslab::kernels
