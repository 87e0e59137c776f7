#include <doctest.h>

#include "nlslab/dynamics.hpp"
#include "nlslab/energies.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/lambda.hpp"
#include "nlslab/random_data.hpp"
#include "nlslab/scaling.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/strichartz.hpp"
#include "oracles.hpp"

using namespace nlslab;

namespace {

SymbolParams params(int d, double N, double s, int sign = 1) {
  SymbolParams p;
  p.d = d;
  p.N = N;
  p.s = s;
  p.sign = sign;
  return p;
}

// Coefficients of d/dx_axis (I u), built from the definition.
SpectralField d_axis_I(const SpectralField& u, const SmoothingSymbol& m, int axis) {
  SpectralField v(u.geometry(), u.cutoff());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto k = oracle::freq(u.geometry(), u.mode(i));
    v.coeffs()[i] = cd(0.0, k[axis]) * m_value(std::hypot(k[0], k[1]), m) * u.coeffs()[i];
  }
  return v;
}

SpectralField I_of(const SpectralField& u, const SmoothingSymbol& m) {
  SpectralField v(u.geometry(), u.cutoff());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto k = oracle::freq(u.geometry(), u.mode(i));
    v.coeffs()[i] = m_value(std::hypot(k[0], k[1]), m) * u.coeffs()[i];
  }
  return v;
}

}  // namespace

TEST_CASE("mass and energy closed forms") {
  const double pi = oracle::pi();
  const auto g = unit_circle();
  CHECK(mass(SpectralField(g, 3)) == 0.0);
  const auto u = plane_wave(g, {3, 0}, {1, 0}, 1.0);
  CHECK(mass(u) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(energy(u, Sign::Defocusing) == doctest::Approx(4 * pi / 3).epsilon(1e-14));
  CHECK(energy(u, Sign::Focusing) == doctest::Approx(pi - pi / 3).epsilon(1e-14));

  const auto v = oracle::random_field(g, {6, 0}, 2);
  CHECK(mass(free_evolve(v, 0.8)) == doctest::Approx(mass(v)).epsilon(1e-13));

  // 2d: d / (4 + 2d) = 1/4
  const auto g2 = build_geometry(2, {0.75}, 1.0);
  const auto w = plane_wave(g2, {2, 2}, {1, 1}, 2.0);
  const double vol = g2.volume();
  CHECK(potential_energy(w) == doctest::Approx(0.25 * 16 * vol).epsilon(1e-13));
}

TEST_CASE("potential energy against an independent quadrature") {
  for (int d : {1, 2}) {
    const auto g = d == 1 ? build_geometry(1, {}, 1.5) : build_geometry(2, {0.75}, 1.0);
    const std::array<int, 2> K{4, d == 2 ? 3 : 0};
    const auto u = oracle::random_field(g, K, 30 + d);
    const int p = d == 1 ? 6 : 4;
    const double ref = (d / (4.0 + 2 * d)) * oracle::integral_abs_pow(u, p, 32);
    CHECK(potential_energy(u) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("quadratic form of sigma_2") {
  const double pi = oracle::pi();
  const auto g = unit_circle();
  const auto u = plane_wave(g, {3, 0}, {1, 0}, 1.0);
  const auto s2 = make_symbol_spec(SymbolName::Sigma2, params(1, 2.0, 0.5));
  CHECK(lambda_eval(s2, u).real() == doctest::Approx(pi).epsilon(1e-14));

  for (int d : {1, 2}) {
    const auto gg = d == 1 ? unit_circle() : build_geometry(2, {0.75}, 1.0);
    const auto p = params(d, 2.0, 0.4);
    const auto v = oracle::random_field(gg, {6, d == 2 ? 5 : 0}, 40 + d);
    double ref = 0.0;
    for (int a = 0; a < d; ++a) ref += 0.5 * oracle::integral_abs_pow(d_axis_I(v, p.smoothing(), a), 2, 16);
    const cd val = lambda_eval(make_symbol_spec(SymbolName::Sigma2, p), v);
    CHECK(val.real() == doctest::Approx(ref).epsilon(1e-11));
    CHECK(std::abs(val.imag()) < 1e-11 * ref);
  }
}

TEST_CASE("sextic form: direct and physical paths") {
  const auto g = unit_circle();
  const auto p = params(1, 2.0, 0.4);
  const auto s6 = make_symbol_spec(SymbolName::Sigma6, p);
  CHECK(lambda_eval(s6, SpectralField(g, 5)) == cd{});
  const auto u = random_modes(g, {6, 0}, 8, 1.0, 3);
  const cd direct = lambda_eval(s6, u, LambdaStrategy::Direct);
  const cd phys = lambda_eval(s6, u, LambdaStrategy::Physical);
  CHECK(std::abs(direct - phys) <= 1e-9 * std::abs(direct));
  const double ref = oracle::integral_abs_pow(I_of(u, p.smoothing()), 6, 64) / 6.0;
  CHECK(phys.real() == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("two-path energy identity") {
  for (int d : {1, 2}) {
    const auto g = d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
    const std::array<int, 2> K{d == 1 ? 16 : 8, d == 2 ? 8 : 0};
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = random_hs(g, K, 0.4, 1.0, 500 + trial);
      for (Sign sg : {Sign::Defocusing, Sign::Focusing}) {
        const auto r = modified_energy(u, 1, 4.0, 0.4, sg);
        const double direct = energy(apply_I(u, make_symbol(4.0, 0.6)), sg);
        CHECK(std::abs(r.e_i1 - direct) <= 1e-8 * std::abs(direct));
      }
    }
  }
}

TEST_CASE("I-energies reduce to the energy below N") {
  const auto g = unit_circle();
  const auto u = random_modes(g, {5, 0}, 6, 1.0, 4);
  const auto p = params(1, 8.0, 0.4);
  const ModifiedEnergy me(g, {5, 0}, p);
  const auto r = me.report(u, 2);
  CHECK(r.e_i1 == doctest::Approx(energy(u, Sign::Defocusing)).epsilon(1e-12));
  CHECK(r.correction == 0.0);
  CHECK(r.e_i2 == r.e_i1);
  CHECK_THROWS_AS(me.report(u, 3), ValidationError);
}

TEST_CASE("symmetric tables agree with the direct sum") {
  const auto g = unit_circle();
  const std::array<int, 2> K{4, 0};
  const auto p = params(1, 2.0, 0.4);
  const auto u = oracle::random_field(g, K, 12);
  auto sym = [&](const Vec2* k) { return sigma_tilde(k, p).real(); };
  const SymmetricTable t(g, K, 6, sym);
  const cd direct = lambda_direct_raw([&](const Vec2* k) { return cd(sym(k), 0.0); }, 6,
                                      std::vector<SpectralField>(6, u));
  CHECK(std::abs(t.contract(u) - direct) <= 1e-10 * std::abs(direct));
  CHECK_THROWS_AS(SymmetricTable(g, K, 6, sym, 10.0), BudgetError);
}

TEST_CASE("correction-only tables") {
  const auto g = unit_circle();
  const ModifiedEnergy me(g, {6, 0}, params(1, 2.0, 0.4), 2e8, false);
  const auto u = oracle::random_field(g, {6, 0}, 1);
  CHECK_NOTHROW(me.correction(u));
  CHECK_THROWS_AS(me.lambda_mbar(u), ValidationError);
  CHECK_THROWS_AS(me.lambda_mbar_nested(u), ValidationError);
}

TEST_CASE("energy identity residual") {
  for (int d : {1, 2}) {
    const auto g = d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
    const std::array<int, 2> K = d == 1 ? std::array<int, 2>{6, 0} : std::array<int, 2>{3, 3};
    const ModifiedEnergy me(g, K, params(d, 2.0, 0.4));

    // zero field
    const std::vector<SpectralField> zeros(5, SpectralField(g, K));
    for (const auto& r : energy_identity_residual({0, 0.1, 0.2, 0.3, 0.4}, zeros, me)) CHECK(r.residual == 0.0);

    // plane wave: exact trajectory, every term constant
    const auto pw = plane_wave(g, K, {1, 0}, 0.8);
    std::vector<double> ts;
    std::vector<SpectralField> tr;
    const double c4 = std::pow(0.8, d == 1 ? 4 : 2);
    const double k2 = 1.0;
    for (int j = 0; j <= 10; ++j) {
      const double t = 0.01 * j;
      ts.push_back(t);
      tr.push_back(std::polar(1.0, -(k2 + c4) * t) * pw);
    }
    for (const auto& r : energy_identity_residual(ts, tr, me)) CHECK(std::abs(r.residual) < 1e-10);

    // refinement: the residual at t = 0.1 shrinks by >= 3.5 per halving
    const auto u0 = random_modes(g, K, 6, 1.0, 7);
    double prev = 0.0;
    for (int r = 0; r < 4; ++r) {
      EvolutionConfig c;
      c.initial = u0;
      c.dt = 0.025 / (1 << r);
      c.t_end = 0.1;
      const auto traj = evolve(c);
      const double res = std::abs(energy_identity_residual(traj.t, traj.u, me).back().residual);
      if (r > 0) CHECK(prev / res >= 3.5);
      prev = res;
    }
  }
}

TEST_CASE("boundary term decays with N") {
  const auto g = unit_circle();
  const std::array<int, 2> K{20, 0};
  std::vector<double> Ns{4, 8, 16}, worst;
  std::vector<SpectralField> data;
  for (int trial = 0; trial < 4; ++trial) {
    auto u = random_hs(g, K, 0.4, 1.0, 900 + trial);
    data.push_back((1.0 / norm(u, NormKind::Hs, 1.0)) * u);
  }
  for (double N : Ns) {
    const ModifiedEnergy me(g, K, params(1, N, 0.4), 2e8, false);
    double w = 0.0;
    for (const auto& u : data) {
      const double h1 = norm(apply_I(u, make_symbol(N, 0.6)), NormKind::Hs, 1.0);
      w = std::max(w, std::abs(me.correction(u)) / std::pow(h1, 6));
    }
    worst.push_back(w);
  }
  const double delta = -loglog_slope(Ns, worst);
  MESSAGE("boundary decay exponent " << delta);
  CHECK(delta > 0.0);
}
