#include <doctest.h>

#include <map>

#include "nlslab/census.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/tuple.hpp"

using namespace nlslab;

namespace {

// Calls f on every ordered tuple of Gamma_6 with entries in [-K, K].
template <class F>
void brute_gamma6(int K, F f) {
  Vec2 k[6];
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b)
      for (int c = -K; c <= K; ++c)
        for (int d = -K; d <= K; ++d)
          for (int e = -K; e <= K; ++e) {
            const int last = -(a + b + c + d + e);
            if (std::abs(last) > K) continue;
            k[0] = {double(a), 0};
            k[1] = {double(b), 0};
            k[2] = {double(c), 0};
            k[3] = {double(d), 0};
            k[4] = {double(e), 0};
            k[5] = {double(last), 0};
            f(k);
          }
}

}  // namespace

TEST_CASE("zero-sum counts") {
  double brute = 0.0;
  brute_gamma6(4, [&](const Vec2*) { brute += 1; });
  CHECK(ordered_gamma_count(6, 1, 4) == brute);
  // Gamma_4 in 2d factorizes over the axes
  CHECK(ordered_gamma_count(4, 2, 3) == ordered_gamma_count(4, 1, 3) * ordered_gamma_count(4, 1, 3));
  CHECK(ordered_gamma_count(2, 1, 5) == 11);
}

TEST_CASE("orbit walk covers every ordered tuple once") {
  for (int d : {1, 2}) {
    const auto g = d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
    const int n = d == 1 ? 6 : 4, K = d == 1 ? 5 : 3;
    std::vector<double> w(kWalkChunks, 0.0);
    const auto walk = walk_gamma(g, n, K, 1e9, [&](std::size_t c, const WalkItem& it) { w[c] += it.weight; });
    double total = 0.0;
    for (double x : w) total += x;
    CHECK(total == ordered_gamma_count(n, d, K));
    CHECK(walk.ordered_count == total);
    CHECK(walk.canonical_count == gamma_walk_size(g, n, K));
    CHECK(walk.canonical_count < walk.ordered_count);
  }
  CHECK_THROWS_AS(walk_gamma(unit_circle(), 6, 8, 10.0, [](std::size_t, const WalkItem&) {}), BudgetError);
}

TEST_CASE("census partitions and matches a brute-force sweep") {
  CensusOptions o;
  o.N = 4;
  o.Kmax = 8;
  o.s = 0.5;
  o.gaps = {4.0};
  const auto rep = resonance_census(o);
  CHECK(rep.partition_ok());
  CHECK(rep.violations == 0.0);
  double total = 0.0;
  for (const auto& r : rep.rows)
    if (r.cls.rfind("demoted:", 0) != 0) total += r.count;
  CHECK(total == rep.expected_ordered);

  // brute force over ordered tuples: class counts and the non-resonant sup
  std::map<std::string, double> counts;
  double sup = 0.0;
  const auto ms = make_symbol(o.N, 1 - o.s);
  const Thresholds th{4.0, 2.0};
  brute_gamma6(o.Kmax, [&](const Vec2* k) {
    const auto c = classify(k, 6, 1, o.N, th);
    if (c.verdict == Verdict::NonResonant) {
      counts["nonresonant"] += 1;
      sup = std::max(sup, std::abs(m_multiplier_raw(k, 6, ms)) / std::abs(omega_raw(k, 6)));
    } else if (c.verdict == Verdict::Resonant) {
      counts["resonant"] += 1;
    } else {
      counts["below"] += 1;
    }
  });
  std::map<std::string, double> got;
  for (const auto& r : rep.rows) {
    if (r.cls.rfind("nonresonant:", 0) == 0) got["nonresonant"] += r.count;
    if (r.cls.rfind("resonant-", 0) == 0) got["resonant"] += r.count;
    if (r.cls == "below-threshold") got["below"] += r.count;
  }
  CHECK(got["nonresonant"] == counts["nonresonant"]);
  CHECK(got["resonant"] == counts["resonant"]);
  CHECK(got["below"] == counts["below"]);
  CHECK(rep.nonresonant_sup[0] == doctest::Approx(sup).epsilon(1e-12));
}

TEST_CASE("lower bounds of the non-resonance rules hold") {
  CensusOptions o;
  o.N = 8;
  o.Kmax = 24;
  o.gaps = {3.0, 4.0, 6.0};
  const auto rep = resonance_census(o);
  CHECK(rep.violations == 0.0);
  for (const auto& r : rep.rows)
    if (r.cls.rfind("nonresonant:", 0) == 0) {
      CHECK(r.min_lower_bound > 0.0);
      CHECK(r.min_abs_omega > 0.0);
    }
  for (const auto& s : rep.sohinger) {
    CHECK(s.passed);
    CHECK(s.omega == 0.0);
  }
  CHECK(rep.sohinger.size() == 3);  // K = 1, 2, 3 fit in Kmax = 24
}

TEST_CASE("census is independent of the worker count") {
  CensusOptions o;
  o.N = 4;
  o.Kmax = 10;
  o.gaps = {3.0, 6.0};
  set_thread_count(1);
  const std::string a = resonance_census(o).csv();
  set_thread_count(4);
  const std::string b = resonance_census(o).csv();
  set_thread_count(1);
  CHECK(a == b);
}

TEST_CASE("2d census") {
  CensusOptions o;
  o.d = 2;
  o.N = 2;
  o.Kmax = 4;
  const auto rep = resonance_census(o);
  CHECK(rep.partition_ok());
  CHECK(rep.violations == 0.0);
}

TEST_CASE("multiplier bounds") {
  const auto s6 = verify_multiplier_bounds(BoundRegion::Sigma6, 4, 12, 0.5);
  CHECK(s6.sup_ratio <= 1.0);
  CHECK(s6.count > 0);
  const auto r1 = verify_multiplier_bounds(BoundRegion::I, 4, 12, 0.5);
  CHECK(std::isfinite(r1.sup_ratio));
  CHECK(r1.sup_ratio > 0.0);

  VerifyOptions o;
  o.N = 4;
  o.Kmax = 12;
  o.gaps = {3.0, 4.0};
  const auto rows = verify_multiplier_bounds({BoundRegion::I, BoundRegion::II, BoundRegion::Sigma6}, o);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) CHECK(std::isfinite(r.sup_ratio));
  CHECK_THROWS_AS(verify_multiplier_bounds({BoundRegion::I, BoundRegion::Sigma4}, o), ValidationError);
  CHECK(default_verify_kmax(1, 8) == 24);
  CHECK(default_verify_kmax(2, 8) == 8);
  CHECK(parse_region("iii") == BoundRegion::III);
  CHECK_THROWS_AS(parse_region("v"), ValidationError);
}

TEST_CASE("stability table") {
  std::vector<VerifyRow> rows;
  auto add = [&](BoundRegion r, double N, double G, double sup) {
    VerifyRow v;
    v.region = r;
    v.N = N;
    v.gap = G;
    v.count = 10;
    v.sup_ratio = sup;
    rows.push_back(v);
  };
  add(BoundRegion::I, 4, 3, 1.0);
  add(BoundRegion::I, 8, 3, 1.5);
  add(BoundRegion::I, 4, 6, 1.2);
  add(BoundRegion::I, 8, 6, 1.9);
  add(BoundRegion::II, 4, 3, 1.0);
  add(BoundRegion::II, 8, 3, 2.5);
  const auto st = stability_table(rows);
  REQUIRE(st.size() == 2);
  CHECK(st[0].stable);
  CHECK(st[0].spread == doctest::Approx(1.9));
  CHECK_FALSE(st[1].stable);
  CHECK(st[1].growth);
}
