#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "nlslab/errors.hpp"

namespace nlslab::detail {

namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(int n0, int n1, int sign) {
    std::lock_guard<std::mutex> lk(mu);
    const auto key = std::make_tuple(n0, n1, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n0) * n1);
    const int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = n1 == 1 ? fftw_plan_dft_1d(n0, buf, buf, dir, flags)
                          : fftw_plan_dft_2d(n0, n1, buf, buf, dir, flags);
    fftw_free(buf);
    if (!p) throw NumericalError("fftw: failed to create plan");
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_inplace(std::complex<double>* data, int n0, int n1, int sign) {
  fftw_plan p = cache().get(n0, n1, sign);
  auto* z = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, z, z);
}

}  // namespace nlslab::detail
