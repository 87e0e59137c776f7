#include <doctest.h>

#include <random>
#include <vector>

#include "nlslab/kernels.hpp"
#include "nlslab/random_data.hpp"
#include "nlslab/spectral.hpp"
#include "oracles.hpp"

namespace k = nlslab::kernels;
using k::cd;

namespace {

std::vector<cd> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cd> v(n);
  for (auto& c : v) c = cd(g(rng), g(rng));
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

const std::size_t kSizes[] = {0, 1, 2, 3, 5, 8, 17, 64, 1001};

}  // namespace

TEST_CASE("scalar kernels against direct formulas") {
  const auto u = random_vec(33, 1), v = random_vec(33, 2);
  std::vector<cd> out(33);
  k::scalar::power_nonlinearity(u.data(), out.data(), u.size(), 2);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(out[i] - std::pow(std::abs(u[i]), 4) * u[i]) < 1e-12 * std::abs(out[i]) + 1e-300);
  double s = 0.0, p = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::pow(std::abs(u[i]), 6);
    p += std::norm(u[i]) * std::norm(v[i]);
  }
  CHECK(rel(k::scalar::sum_abs_pow(u.data(), u.size(), 3), s) < 1e-13);
  CHECK(rel(k::scalar::sum_abs2_product(u.data(), v.data(), u.size()), p) < 1e-13);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!k::avx2_supported()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  for (std::size_t n : kSizes) {
    const auto u = random_vec(n, 10 + n), v = random_vec(n, 20 + n);
    for (int q : {1, 2, 3}) {
      std::vector<cd> a(n), b(n);
      k::scalar::power_nonlinearity(u.data(), a.data(), n, q);
      k::avx2::power_nonlinearity(u.data(), b.data(), n, q);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::abs(a[i]));
      CHECK(rel(k::scalar::sum_abs_pow(u.data(), n, q), k::avx2::sum_abs_pow(u.data(), n, q)) < 1e-13);
    }
    std::vector<cd> a = u, b = u;
    k::scalar::cmul(a.data(), v.data(), n);
    k::avx2::cmul(b.data(), v.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * std::abs(a[i]));
    CHECK(rel(k::scalar::sum_abs2_product(u.data(), v.data(), n), k::avx2::sum_abs2_product(u.data(), v.data(), n)) < 1e-13);

    // in-place power
    std::vector<cd> c = u;
    k::avx2::power_nonlinearity(c.data(), c.data(), n, 2);
    std::vector<cd> ref(n);
    k::scalar::power_nonlinearity(u.data(), ref.data(), n, 2);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(c[i] - ref[i]) <= 1e-14 * std::abs(ref[i]));
  }
}

TEST_CASE("table contraction kernels agree") {
  std::mt19937_64 rng(5);
  const std::size_t m = 50;
  std::vector<double> fre(m), fim(m), gre(m), gim(m);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    fre[i] = g(rng);
    fim[i] = g(rng);
    gre[i] = g(rng);
    gim[i] = g(rng);
  }
  for (std::size_t n : kSizes) {
    std::vector<std::int32_t> ia(n), ib(n);
    std::vector<double> v(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(m) - 1);
    cd ref = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      ia[e] = pick(rng);
      ib[e] = pick(rng);
      v[e] = g(rng);
      ref += v[e] * cd(fre[ia[e]], fim[ia[e]]) * cd(gre[ib[e]], gim[ib[e]]);
    }
    const cd s = k::scalar::contract(ia.data(), ib.data(), v.data(), n, fre.data(), fim.data(), gre.data(), gim.data());
    CHECK(std::abs(s - ref) <= 1e-12 * (1 + std::abs(ref)));
    if (k::avx2_supported()) {
      const cd a = k::avx2::contract(ia.data(), ib.data(), v.data(), n, fre.data(), fim.data(), gre.data(), gim.data());
      CHECK(std::abs(a - s) <= 1e-12 * (1 + std::abs(s)));
    }
  }
}

TEST_CASE("runtime selection switches the dispatched kernels") {
  const k::Isa before = k::active();
  k::set_active(k::Isa::Scalar);
  CHECK(k::active() == k::Isa::Scalar);
  const auto g = nlslab::unit_circle();
  const auto u = oracle::random_field(g, {12, 0}, 3);
  const auto a = nlslab::power_nonlinearity(u, 2, {12, 0});
  if (k::avx2_supported()) {
    k::set_active(k::Isa::Avx2);
    CHECK(k::active() == k::Isa::Avx2);
    const auto b = nlslab::power_nonlinearity(u, 2, {12, 0});
    double scale = 0.0;
    for (const cd& c : a.coeffs()) scale = std::max(scale, std::abs(c));
    CHECK(nlslab::max_abs_diff(a, b) <= 1e-13 * scale);
  }
  k::set_active(before);
  CHECK(std::string(k::name(k::Isa::Scalar)) == "scalar");
  CHECK(std::string(k::name(k::Isa::Avx2)) == "avx2");
}
