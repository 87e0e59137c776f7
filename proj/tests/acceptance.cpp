// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nlslab/almost_conservation.hpp"
#include "nlslab/census.hpp"
#include "nlslab/dynamics.hpp"
#include "nlslab/energies.hpp"
#include "nlslab/fourier_expand.hpp"
#include "nlslab/random_data.hpp"
#include "nlslab/scaling.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/strichartz.hpp"
#include "nlslab/symbols.hpp"
#include "nlslab/tuple.hpp"

using namespace nlslab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TorusGeometry geometry_for(int d) { return d == 1 ? unit_circle() : build_geometry(2, {1.0 / std::sqrt(2.0)}, 1.0); }

Outcome exactness() {
  double worst = 0.0;
  // Plancherel: coefficient side against the grid side
  for (int d : {1, 2}) {
    const auto g = geometry_for(d);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto u = random_hs(g, {12, d == 2 ? 9 : 0}, 0.5, 1.0 + seed, seed);
      const double grid = quadrature_lp(to_physical(u, 2), 2.0);
      worst = std::max(worst, rel(grid, mass(u)));
      worst = std::max(worst, rel(norm_l2(u) * norm_l2(u), mass(u)));
    }
  }
  // mass is invariant under u -> lambda^{-d/2} u(x / lambda, t / lambda^2)
  for (int d : {1, 2})
    for (double lam : {1.5, 2.0, 3.7, 16.0}) {
      const auto u = random_hs(geometry_for(d), {10, d == 2 ? 7 : 0}, 0.4, 2.5, 40 + d);
      worst = std::max(worst, rel(mass(rescale(u, lam)), mass(u)));
    }
  // alpha = -i Omega on random tuples of Gamma_6 and Gamma_4
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> U(-200, 200);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> k(6);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += (k[i] = U(rng));
    k[5] = -s;
    const auto t = tuple_1d(k);
    const cd a = alpha(t), ref(0.0, -omega(t));
    worst = std::max(worst, std::abs(a - ref) / std::max(1.0, std::abs(ref)));
  }
  const auto g2 = geometry_for(2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Vec2> k(4);
    Vec2 s{0, 0};
    for (int i = 0; i < 3; ++i) {
      k[i] = frequency(g2, {U(rng) / 4, U(rng) / 4});
      s[0] += k[i][0];
      s[1] += k[i][1];
    }
    k[3] = {-s[0], -s[1]};
    const auto t = make_tuple(2, k);
    const cd a = alpha(t), ref(0.0, -omega(t));
    worst = std::max(worst, std::abs(a - ref) / std::max(1.0, std::abs(ref)));
  }
  // Sohinger family
  double sohinger = 0.0;
  for (int K = 1; K <= 9; ++K)
    sohinger = std::max(sohinger, std::abs(omega(tuple_1d({5.0 * K, -3.0 * K, 6.0 * K, -2.0 * K, 1.0 * K, -7.0 * K}))));
  worst = std::max(worst, sohinger);
  return {worst < 1e-12, "max relative deviation " + fmt(worst)};
}

Outcome two_path_energy() {
  double worst = 0.0;
  int fields = 0;
  for (int d : {1, 2}) {
    const auto g = geometry_for(d);
    const std::array<int, 2> K{d == 1 ? 24 : 10, d == 2 ? 10 : 0};
    for (int trial = 0; trial < 200; ++trial) {
      const double N = trial % 3 == 0 ? 2.0 : trial % 3 == 1 ? 4.0 : 8.0;
      const double s = 0.3 + 0.6 * (trial % 7) / 6.0;
      const Sign sg = trial % 2 == 0 ? Sign::Defocusing : Sign::Focusing;
      const auto u = random_hs(g, K, s, 0.1 + trial % 5, 1000 + 7 * trial + d);
      const auto r = modified_energy(u, 1, N, s, sg);
      const double direct = energy(apply_I(u, make_symbol(N, 1 - s)), sg);
      worst = std::max(worst, rel(r.e_i1, direct));
      ++fields;
    }
  }
  return {worst <= 1e-8, std::to_string(fields) + " fields, max relative gap " + fmt(worst)};
}

Outcome residual_refinement() {
  bool ok = true;
  std::string detail;
  for (int d : {1, 2}) {
    const auto g = d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
    const std::array<int, 2> K = d == 1 ? std::array<int, 2>{6, 0} : std::array<int, 2>{3, 3};
    SymbolParams p;
    p.d = d;
    p.N = 2;
    p.s = 0.4;
    const ModifiedEnergy me(g, K, p);
    const auto u0 = random_modes(g, K, 6, 1.0, 7);
    double prev = 0.0;
    detail += (d == 1 ? "1d ratios" : "; 2d ratios");
    for (int r = 0; r < 4; ++r) {
      EvolutionConfig c;
      c.initial = u0;
      c.dt = 0.025 / (1 << r);
      c.t_end = 0.1;
      const auto tr = evolve(c);
      const double res = std::abs(energy_identity_residual(tr.t, tr.u, me).back().residual);
      if (r > 0) {
        const double ratio = prev / res;
        ok = ok && ratio >= 3.5;
        detail += " " + fmt(ratio);
      }
      prev = res;
    }
  }
  return {ok, detail};
}

Outcome classifier_soundness() {
  bool ok = true;
  double C = 0.0, min_lb = std::numeric_limits<double>::infinity(), violations = 0.0, tuples = 0.0;
  std::string witness;
  for (double N : {4.0, 8.0}) {
    CensusOptions o;
    o.N = N;
    o.Kmax = 32;
    o.gaps = {3.0, 4.0, 6.0};
    const auto rep = resonance_census(o);
    ok = ok && rep.partition_ok();
    violations += rep.violations;
    if (rep.violations > 0) witness = rep.violation_witness;
    tuples += rep.walk.ordered_count;
    for (double c : rep.nonresonant_sup) C = std::max(C, c);
    for (const auto& r : rep.rows)
      if (r.cls.rfind("nonresonant:", 0) == 0 && r.count > 0) min_lb = std::min(min_lb, r.min_lower_bound);
    for (const auto& s : rep.sohinger) ok = ok && s.passed;
  }
  ok = ok && violations == 0.0 && std::isfinite(C) && min_lb > 0.0;
  std::string detail = fmt(tuples) + " ordered tuples, global C " + fmt(C) + ", min lower-bound constant " +
                       fmt(min_lb) + ", violations " + fmt(violations);
  if (!witness.empty()) detail += " (" + witness + ")";
  return {ok, detail};
}

Outcome multiplier_bounds() {
  std::vector<VerifyRow> all;
  for (int d : {1, 2})
    for (double N : {4.0, 8.0, 16.0}) {
      VerifyOptions o;
      o.N = N;
      o.gaps = {3.0, 4.0, 6.0};
      if (d == 2) o.geometry = build_geometry(2, {1.0}, 1.0);
      const auto regs = d == 1 ? std::vector<BoundRegion>{BoundRegion::I, BoundRegion::II, BoundRegion::III,
                                                          BoundRegion::IV, BoundRegion::Sigma6}
                               : std::vector<BoundRegion>{BoundRegion::Resonant2d, BoundRegion::NonResonant2d,
                                                          BoundRegion::Sigma4};
      const auto rows = verify_multiplier_bounds(regs, o);
      all.insert(all.end(), rows.begin(), rows.end());
    }
  bool ok = true;
  int growth = 0;
  std::string detail;
  for (const auto& r : stability_table(all)) {
    ok = ok && r.stable && r.finite;
    growth += r.growth ? 1 : 0;
    detail += std::string(detail.empty() ? "" : ", ") + region_name(r.region) + " spread " + fmt(r.spread) +
              (r.stable ? "" : " (unstable)");
  }
  detail += "; growth flags " + std::to_string(growth);
  return {ok && growth == 0, detail};
}

Outcome fourier_fidelity() {
  SymbolParams p;
  p.N = 4;
  p.s = 0.5;
  const auto sym = make_symbol_spec(SymbolName::MBar6, p);
  const auto box = box_around(tuple_1d({-30, 31, 2, -1, -1, -1}), std::vector<double>(6, 2.0));
  const auto e = fourier_expand(sym, box, 8);
  const double err = reconstruction_error(e, 2000);
  const double slope = two_truncation_slope(sym, box, 8);
  const bool ok = err <= 1e-6 && e.decay_slope >= 6.0 && slope >= 6.0;
  return {ok, "reconstruction error " + fmt(err) + ", decay slope " + fmt(e.decay_slope) + ", tail slope " + fmt(slope)};
}

Outcome strichartz() {
  StrichartzConfig c;  // lambda 64, N 256, M in {4, 8, 16, 32}, 200 samples
  const auto rep = run_strichartz_probe(c);
  double cal = 0.0;
  for (const auto& r : rep.calibration) cal = std::max(cal, r.rel_error());
  const bool ok = rep.fitted && std::abs(rep.slope_max + 0.5) <= 0.1 && cal <= 1e-10;
  return {ok, "slope of the max " + fmt(rep.slope_max) + " (mean " + fmt(rep.slope_mean) + "), calibration error " +
                  fmt(cal)};
}

Outcome almost_conservation() {
  bool ok = true;
  std::string detail;
  for (int d : {1, 2}) {
    AlmostConservationConfig c;
    c.d = d;
    const auto tab = run_almost_conservation(c);
    ok = ok && tab.monotone_e2 && tab.e2_below_e1;
    detail += std::string(d == 1 ? "1d" : "; 2d") + " E_I2 increments";
    for (const auto& r : tab.rows) detail += " " + fmt(r.sup_inc_e2);
    detail += ", E_I1 at N=" + fmt(tab.rows.back().N) + " " + fmt(tab.rows.back().sup_inc_e1);
    detail += std::string(", monotone ") + (tab.monotone_e2 ? "yes" : "no");
    detail += std::string(", below E_I1 ") + (tab.e2_below_e1 ? "yes" : "no");
  }
  return {ok, detail};
}

Outcome budget_thresholds() {
  const double z1 = existence_zero_crossing(1), z2 = existence_zero_crossing(2);
  const double e1 = std::abs(z1 - 1.0 / 3.0), e2 = std::abs(z2 - 3.0 / 5.0);
  const bool sides = !gwp_budget(1, 1.0 / 3.0 - 1e-3, 64).global_iterable &&
                     gwp_budget(1, 1.0 / 3.0 + 1e-3, 64).global_iterable &&
                     !gwp_budget(2, 0.6 - 1e-3, 64).global_iterable && gwp_budget(2, 0.6 + 1e-3, 64).global_iterable;
  return {e1 <= 1e-12 && e2 <= 1e-12 && sides, "1d crossing " + fmt(z1) + " (error " + fmt(e1) + "), 2d crossing " +
                                                   fmt(z2) + " (error " + fmt(e2) + ")"};
}

Outcome integrator_orders() {
  const auto g = unit_circle();
  const std::array<int, 2> K{8, 0};
  const auto u0 = plane_wave(g, K, {1, 0}, 1.0) + random_modes(g, K, 6, 2e-3 * std::acos(-1.0), 11);
  bool ok = true;
  std::string detail;
  for (auto integ : {Integrator::Strang, Integrator::Rk4Galerkin}) {
    auto run = [&](double dt) {
      EvolutionConfig c;
      c.initial = u0;
      c.integrator = integ;
      c.dt = dt;
      c.t_end = 1.0;
      c.sample_stride = 1 << 30;
      return evolve(c).u.back();
    };
    const double base = 0.01, target = integ == Integrator::Strang ? 2.0 : 4.0;
    const auto ref = run(base / 256);
    detail += std::string(detail.empty() ? "" : "; ") + to_string(integ) + " slopes";
    double prev = 0.0;
    for (int r = 0; r < 4; ++r) {
      const double err = max_abs_diff(run(base / (1 << r)), ref);
      if (r > 0) {
        const double slope = std::log2(prev / err);
        ok = ok && std::abs(slope - target) <= 0.3;
        detail += " " + fmt(slope);
      }
      prev = err;
    }
  }
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exactness suite", 10, exactness},
      {2, "two-path energy identity", 60, two_path_energy},
      {3, "energy identity residual refinement", 600, residual_refinement},
      {4, "classifier soundness sweep", 1800, classifier_soundness},
      {5, "multiplier size bounds", 1800, multiplier_bounds},
      {6, "Fourier expansion fidelity", 300, fourier_fidelity},
      {7, "Strichartz probe", 900, strichartz},
      {8, "almost-conservation trend", 1800, almost_conservation},
      {9, "budget thresholds", 1, budget_thresholds},
      {10, "integrator orders", 300, integrator_orders},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.passed && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.1f s of %.0f s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
