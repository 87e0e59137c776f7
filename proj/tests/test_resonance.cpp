#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "nlslab/classify.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/symbols.hpp"
#include "nlslab/tuple.hpp"

using namespace nlslab;

namespace {

// Termwise reference values built from m_value alone.
struct Termwise {
  double omega = 0.0, mraw = 0.0, prod = 1.0;
};

Termwise termwise(const std::vector<double>& k, const SmoothingSymbol& m) {
  Termwise t;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double sgn = i % 2 == 0 ? 1.0 : -1.0;
    const double mv = m_value(std::abs(k[i]), m);
    t.omega += sgn * k[i] * k[i];
    t.mraw += sgn * mv * mv * k[i] * k[i];
    t.prod *= mv;
  }
  return t;
}

std::vector<double> random_gamma6(std::mt19937_64& rng, int K) {
  std::uniform_int_distribution<int> u(-K, K);
  std::vector<double> k(6);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) {
    k[i] = u(rng);
    s += k[i];
  }
  k[5] = -s;
  return k;
}

// Average of f over permutations inside the odd and inside the even slots.
template <class F>
cd symmetrize(const std::vector<double>& k, F f) {
  std::array<int, 3> o{0, 2, 4}, e{1, 3, 5};
  cd s = 0.0;
  int count = 0;
  std::sort(o.begin(), o.end());
  do {
    std::sort(e.begin(), e.end());
    do {
      std::vector<Vec2> v(6);
      for (int i = 0; i < 3; ++i) {
        v[2 * i] = {k[o[i]], 0.0};
        v[2 * i + 1] = {k[e[i]], 0.0};
      }
      s += f(v.data());
      ++count;
    } while (std::next_permutation(e.begin(), e.end()));
  } while (std::next_permutation(o.begin(), o.end()));
  return s / static_cast<double>(count);
}

}  // namespace

TEST_CASE("resonance function values") {
  CHECK(omega(tuple_1d({5, -3, 6, -2, 1, -7})) == 0.0);
  CHECK(omega(tuple_1d({1, -1, 1, -1, 1, -1})) == 0.0);
  CHECK(omega(tuple_1d({64, -32, -16, -16, 0, 0})) == 3072.0);
  CHECK_THROWS_AS(tuple_1d({1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(tuple_1d({1, 2, 3, 4, 5, 6}), ValidationError);
}

TEST_CASE("alpha equals -i omega") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto k = random_gamma6(rng, 50);
    const auto t = tuple_1d(k);
    CHECK(alpha(t) == cd(0.0, -omega(t)));
  }
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vec2> k(4);
    Vec2 s{0, 0};
    for (int i = 0; i < 3; ++i) {
      k[i] = {u(rng), u(rng)};
      s[0] += k[i][0];
      s[1] += k[i][1];
    }
    k[3] = {-s[0], -s[1]};
    const auto t = make_tuple(2, k);
    CHECK(std::abs(alpha(t) - cd(0.0, -omega(t))) <= 1e-12 * (1 + std::abs(omega(t))));
  }
}

TEST_CASE("Sohinger family is exactly resonant") {
  for (int K = 1; K <= 9; ++K) {
    const auto t = tuple_1d({5.0 * K, -3.0 * K, 6.0 * K, -2.0 * K, 1.0 * K, -7.0 * K});
    CHECK(omega(t) == 0.0);
    CHECK(m_multiplier(t, make_symbol(7.0 * K, 0.5)) == 0.0);
  }
}

TEST_CASE("multiplier M against termwise evaluation") {
  const auto m = make_symbol(8.0, 0.6);
  const auto low = tuple_1d({3, -2, 5, -1, -4, -1});
  CHECK(m_multiplier(low, m) == omega(low));
  const std::vector<double> k{32, -30, 1, -2, -3, 2};
  const auto ref = termwise(k, m);
  CHECK(m_multiplier(tuple_1d(k), m) == doctest::Approx(ref.mraw).epsilon(1e-14));
  CHECK(m_value(32.0, m) == doctest::Approx(std::pow(0.25, 0.6)).epsilon(1e-15));
}

TEST_CASE("classifier examples") {
  const Thresholds th;
  {
    const auto c = classify(tuple_1d({64, -63, 16, -16, -1, 0}), 16, th);
    CHECK(c.verdict == Verdict::Resonant);
    CHECK(c.rcase == ResonantCase::I);
    CHECK(c.witness_lhs == 1.0);
    CHECK(c.witness_rhs == 4.0);
  }
  {
    const auto c = classify(tuple_1d({64, -32, -16, -16, 0, 0}), 16, th);
    CHECK(c.verdict == Verdict::NonResonant);
    CHECK(c.rule == Rule::N2llN1);
    CHECK(std::string(rule_name(c.rule)) == "N2llN1");
    CHECK(std::abs(c.omega) >= 64.0 * 64.0 / 2);
  }
  {
    const auto c = classify(tuple_1d({40, -24, 48, -16, 8, -56}), 8, th);
    CHECK(c.verdict == Verdict::Resonant);
    CHECK(c.rcase == ResonantCase::III);
  }
  {
    const auto c = classify(tuple_1d({3, -2, 1, -1, -1, 0}), 16, th);
    CHECK(c.verdict == Verdict::BelowThreshold);
  }
}

TEST_CASE("classification is invariant under the orbit") {
  std::mt19937_64 rng(7);
  const Thresholds th;
  for (int trial = 0; trial < 300; ++trial) {
    const auto k = random_gamma6(rng, 40);
    const auto c0 = classify(tuple_1d(k), 8, th);
    // swap inside the odd group and exchange the groups
    const std::vector<double> perm{k[4], k[1], k[0], k[5], k[2], k[3]};
    const std::vector<double> swapped{k[1], k[0], k[3], k[2], k[5], k[4]};
    for (const auto& p : {perm, swapped}) {
      const auto c = classify(tuple_1d(p), 8, th);
      CHECK(c.verdict == c0.verdict);
      CHECK(c.rcase == c0.rcase);
      CHECK(c.rule == c0.rule);
    }
  }
}

TEST_CASE("correction symbol") {
  SymbolParams p;
  p.N = 16;
  p.s = 0.4;
  const auto low = tuple_1d({3, -2, 5, -1, -4, -1});
  CHECK(sigma_tilde(low, p) == cd{});

  std::mt19937_64 rng(11);
  const auto m = p.smoothing();
  int tested = 0;
  for (int trial = 0; trial < 20000 && tested < 1000; ++trial) {
    const auto k = random_gamma6(rng, 64);
    const auto t = tuple_1d(k);
    const auto c = classify(t, p.N, p.thresholds);
    if (c.verdict != Verdict::NonResonant) continue;
    ++tested;
    const auto ref = termwise(k, m);
    const double expect = (ref.mraw / ref.omega - ref.prod) / 6.0;
    const cd st = sigma_tilde(t, p);
    CHECK(std::abs(st.real() - expect) <= 1e-12 * (1 + std::abs(expect)));
    CHECK(std::abs(st.imag()) == 0.0);
    const cd two_path = -m_tilde(t.k.data(), p) / alpha(t);
    CHECK(std::abs(st - two_path) <= 1e-12 * (1 + std::abs(st)));
    CHECK(m_bar(t.k.data(), p) == cd{});
  }
  CHECK(tested == 1000);
}

TEST_CASE("resonant part carries the whole multiplier on resonant tuples") {
  SymbolParams p;
  p.N = 16;
  p.s = 0.4;
  const auto t = tuple_1d({64, -63, 16, -16, -1, 0});
  const auto ref = termwise({64, -63, 16, -16, -1, 0}, p.smoothing());
  CHECK(m_bar(t.k.data(), p).imag() == doctest::Approx(ref.mraw / 6.0).epsilon(1e-14));
  CHECK(sigma_tilde(t, p).real() == doctest::Approx(-ref.prod / 6.0).epsilon(1e-14));
}

TEST_CASE("prefactors") {
  CHECK(lambda_prefactor(SymbolName::Sigma2, 1) == cd(-0.5, 0));
  CHECK(lambda_prefactor(SymbolName::Sigma6, 1) == cd(1.0 / 6, 0));
  CHECK(lambda_prefactor(SymbolName::Sigma4, 1) == cd(0.25, 0));
  CHECK(lambda_prefactor(SymbolName::M6, -1) == cd(0, -1.0 / 6));
  CHECK(lambda_prefactor(SymbolName::M4, 1) == cd(0, 0.25));
}

TEST_CASE("substitution of collapsed arguments") {
  SymbolParams p;
  p.N = 4;
  p.s = 0.5;
  SymbolSpec constant;
  constant.name = SymbolName::Sigma2;
  constant.arity = 2;
  constant.label = "const";
  constant.eval = [](const Vec2*) { return cd(2.5, -1.0); };
  const auto x1 = x_substitute(constant, 1, 5);
  CHECK(x1.arity == 6);
  const auto t = tuple_1d({5, -3, 6, -2, 1, -7});
  CHECK(x1(t) == cd(2.5, -1.0));

  SymbolSpec sum;
  sum.name = SymbolName::Sigma2;
  sum.arity = 2;
  sum.eval = [](const Vec2* k) { return cd(k[0][0] + k[1][0], 0.0); };
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_gamma6(rng, 30);
    CHECK(x_substitute(sum, 2, 5)(tuple_1d(k)) == cd{});
    CHECK(x_substitute(sum, 1, 5)(tuple_1d(k)) == cd{});
  }

  // the alternating sum of X_1 and X_2 of sigma_2, symmetrized, is M6 / 3
  const auto s2 = make_symbol_spec(SymbolName::Sigma2, p);
  const auto X1 = x_substitute(s2, 1, 5), X2 = x_substitute(s2, 2, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = random_gamma6(rng, 20);
    const cd lhs = symmetrize(k, [&](const Vec2* v) { return X1(v) - X2(v); });
    const double ref = termwise(k, p.smoothing()).mraw / 3.0;
    CHECK(std::abs(lhs - ref) <= 1e-11 * (1 + std::abs(ref)));
  }
  CHECK_THROWS_AS(x_substitute(s2, 3, 5), ValidationError);
  CHECK_THROWS_AS(x_substitute(s2, 1, 4), ValidationError);
}
