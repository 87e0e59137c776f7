#include "nlslab/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "nlslab/errors.hpp"
#include "nlslab/field.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/symbol.hpp"
#include "nlslab/tuple.hpp"

namespace nlslab {

namespace {

struct Lattice {
  int d = 1;
  int K = 0;
  int m = 3;  // group size n / 2
  std::vector<Mode> modes;
  std::vector<Vec2> freq;
  // multisets: m point indices each, nondecreasing
  std::vector<std::int32_t> sets;
  std::vector<double> perm;
  int key_side = 0;  // sums per axis range over [-mK, mK]
  std::vector<std::vector<std::int32_t>> by_key;
  std::vector<int> work;  // keys with a positive sum, then the zero key last

  int key(int sx, int sy) const { return (sx + m * K) * key_side + (d == 2 ? sy + m * K : 0); }
  int neg(int k) const {
    const int sx = k / key_side - m * K;
    const int sy = d == 2 ? k % key_side - m * K : 0;
    return key(-sx, -sy);
  }
};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Lattice build_lattice(const TorusGeometry& g, int n, int Kmax) {
  if (n != 4 && n != 6) throw ValidationError("n", "the census walks Gamma_4 or Gamma_6");
  if (Kmax < 1) throw ValidationError("Kmax", "must be >= 1");
  Lattice L;
  L.d = g.dimension;
  L.K = Kmax;
  L.m = n / 2;
  const int ky = L.d == 2 ? Kmax : 0;
  for (int a = -Kmax; a <= Kmax; ++a)
    for (int b = -ky; b <= ky; ++b) {
      L.modes.push_back({a, b});
      L.freq.push_back(frequency(g, Mode{a, b}));
    }
  L.key_side = L.d == 2 ? 2 * L.m * Kmax + 1 : 1;
  const int nkeys = (2 * L.m * Kmax + 1) * L.key_side;
  L.by_key.assign(nkeys, {});
  const int P = static_cast<int>(L.modes.size());
  std::vector<int> idx(L.m, 0);
  const double mf = factorial(L.m);
  for (;;) {
    int sx = 0, sy = 0;
    double denom = 1.0;
    int run = 1;
    for (int i = 0; i < L.m; ++i) {
      sx += L.modes[idx[i]][0];
      sy += L.modes[idx[i]][1];
      if (i > 0 && idx[i] == idx[i - 1]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    denom *= factorial(run);
    const auto id = static_cast<std::int32_t>(L.perm.size());
    L.perm.push_back(mf / denom);
    for (int i = 0; i < L.m; ++i) L.sets.push_back(idx[i]);
    L.by_key[L.key(sx, sy)].push_back(id);
    int j = L.m - 1;
    while (j >= 0 && idx[j] == P - 1) --j;
    if (j < 0) break;
    ++idx[j];
    for (int i = j + 1; i < L.m; ++i) idx[i] = idx[j];
  }
  const int zero = L.key(0, 0);
  for (int k = 0; k < nkeys; ++k)
    if (k > zero && !L.by_key[k].empty() && !L.by_key[L.neg(k)].empty()) L.work.push_back(k);
  L.work.push_back(zero);
  return L;
}

double lattice_walk_size(const Lattice& L) {
  double total = 0.0;
  for (int k : L.work) {
    const double a = static_cast<double>(L.by_key[k].size());
    if (k == L.key(0, 0)) {
      total += a * (a + 1) / 2;
    } else {
      total += a * static_cast<double>(L.by_key[L.neg(k)].size());
    }
  }
  return total;
}

}  // namespace

double gamma_walk_size(const TorusGeometry& g, int n, int Kmax) { return lattice_walk_size(build_lattice(g, n, Kmax)); }

GammaWalk walk_gamma(const TorusGeometry& g, int n, int Kmax, double guard,
                     const std::function<void(std::size_t, const WalkItem&)>& visit) {
  const Lattice L = build_lattice(g, n, Kmax);
  GammaWalk w;
  w.geometry = g;
  w.n = n;
  w.Kmax = Kmax;
  w.raw_count = std::pow(2.0 * Kmax + 1, (n - 1) * g.dimension);
  w.canonical_count = lattice_walk_size(L);
  if (w.canonical_count > guard)
    throw BudgetError("census would visit " + std::to_string(w.canonical_count) + " representatives (guard " +
                          std::to_string(guard) + ")",
                      w.canonical_count);
  const int m = L.m;
  const int zero = L.key(0, 0);
  std::vector<double> partial(kWalkChunks, 0.0);
  parallel_chunks(L.work.size(), kWalkChunks, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    Vec2 k[6];
    double acc = 0.0;
    auto emit = [&](std::int32_t A, std::int32_t B, double weight) {
      for (int i = 0; i < m; ++i) {
        k[2 * i] = L.freq[L.sets[A * m + i]];
        k[2 * i + 1] = L.freq[L.sets[B * m + i]];
      }
      acc += weight;
      visit(chunk, WalkItem{k, weight});
    };
    for (std::size_t w_i = b; w_i < e; ++w_i) {
      const int key = L.work[w_i];
      const auto& SA = L.by_key[key];
      if (key == zero) {
        for (std::size_t i = 0; i < SA.size(); ++i)
          for (std::size_t j = i; j < SA.size(); ++j)
            emit(SA[i], SA[j], L.perm[SA[i]] * L.perm[SA[j]] * (i == j ? 1.0 : 2.0));
      } else {
        const auto& SB = L.by_key[L.neg(key)];
        for (std::int32_t A : SA)
          for (std::int32_t B : SB) emit(A, B, 2.0 * L.perm[A] * L.perm[B]);
      }
    }
    partial[chunk] = acc;
  });
  for (double p : partial) w.ordered_count += p;
  return w;
}

double ordered_gamma_count(int n, int d, int Kmax) {
  // number of n-sequences in [-K, K] with zero sum, per axis
  const int span = 2 * Kmax + 1;
  std::vector<double> cur(1, 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> next(cur.size() + span - 1, 0.0);
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (int b = 0; b < span; ++b) next[a + b] += cur[a];
    cur = std::move(next);
  }
  const double axis = cur[static_cast<std::size_t>(n) * Kmax];
  return d == 2 ? axis * axis : axis;
}

namespace {

std::string tuple_str(const Vec2* k, int n, int d) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < n; ++i) {
    if (i) os << ' ';
    if (d == 1) {
      os << k[i][0];
    } else {
      os << '[' << k[i][0] << ',' << k[i][1] << ']';
    }
  }
  os << ')';
  return os.str();
}

double mag(const Vec2& v) { return std::hypot(v[0], v[1]); }

// Lower bound on |Omega| claimed by each non-resonance rule.
double rule_lower_bound(Rule r, const CanonicalTuple& ct) {
  const double k1 = ct.kstar(0);
  switch (r) {
    case Rule::N3ggN4: return k1 * ct.kstar(2);
    case Rule::Bilinear: {
      const Vec2 s{ct.c[0][0] + ct.c[1][0], ct.c[0][1] + ct.c[1][1]};
      return k1 * mag(s);
    }
    default: return k1 * k1;
  }
}

double resonant_bound(const CanonicalTuple& ct, const SmoothingSymbol& ms) {
  const double n1 = std::max(ct.kstar(0), 1.0), n3 = std::max(ct.kstar(2), 1.0);
  return m_value(n1, ms) * n1 * m_value(n3, ms) * n3;
}

struct Acc {
  double count = 0.0;
  double min_abs_omega = std::numeric_limits<double>::infinity();
  double max_ratio = -1.0;
  double min_lb = std::numeric_limits<double>::infinity();
  std::string witness;
  bool has_ratio = false;

  void ratio(double r, const Vec2* k, int n, int d) {
    has_ratio = true;
    if (r > max_ratio) {
      max_ratio = r;
      witness = tuple_str(k, n, d);
    }
  }
  void merge(const Acc& o) {
    count += o.count;
    min_abs_omega = std::min(min_abs_omega, o.min_abs_omega);
    min_lb = std::min(min_lb, o.min_lb);
    has_ratio = has_ratio || o.has_ratio;
    if (o.max_ratio > max_ratio) {
      max_ratio = o.max_ratio;
      witness = o.witness;
    }
  }
};

using ClassMap = std::map<std::string, Acc>;

std::vector<std::array<double, 6>> sohinger_tuples(int Kmax) {
  std::vector<std::array<double, 6>> out;
  for (int K = 1; 7 * K <= Kmax; ++K) out.push_back({5.0 * K, -3.0 * K, 6.0 * K, -2.0 * K, 1.0 * K, -7.0 * K});
  return out;
}

bool same_canonical(const CanonicalTuple& a, const CanonicalTuple& b) {
  for (int i = 0; i < a.n; ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

Thresholds thresholds_for(double G, double D) {
  if (!(G > 1.0) || !(D > 1.0)) throw ValidationError("gap_factor", "G and D must exceed 1");
  return Thresholds{G, D};
}

}  // namespace

bool CensusReport::partition_ok() const {
  if (walk.ordered_count != expected_ordered) return false;
  for (std::size_t g = 0; g < options.gaps.size(); ++g) {
    double total = 0.0;
    for (const auto& r : rows)
      if (r.gap == options.gaps[g] && r.cls.rfind("demoted:", 0) != 0) total += r.count;
    if (total != expected_ordered) return false;
  }
  return true;
}

CensusReport resonance_census(const CensusOptions& opt) {
  if (opt.d != 1 && opt.d != 2) throw ValidationError("d", "must be 1 or 2");
  if (opt.gaps.empty()) throw ValidationError("gap_factor", "at least one gap factor is required");
  if (!(opt.N >= 1.0)) throw ValidationError("N", "must be >= 1");
  if (!(opt.s > 0.0 && opt.s < 1.0)) throw ValidationError("s", "must lie in (0, 1)");
  std::vector<Thresholds> ths;
  for (double G : opt.gaps) ths.push_back(thresholds_for(G, opt.dominance));

  CensusReport rep;
  rep.options = opt;
  if (rep.options.geometry.dimension != opt.d) rep.options.geometry = opt.d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
  const TorusGeometry& g = rep.options.geometry;
  const int n = opt.d == 1 ? 6 : 4;
  const auto ms = make_symbol(opt.N, 1.0 - opt.s);
  const std::size_t nG = ths.size();

  std::vector<CanonicalTuple> soh_canon;
  std::vector<std::array<double, 6>> soh;
  if (opt.d == 1 && g.lambda == 1.0) {
    soh = sohinger_tuples(opt.Kmax);
    for (const auto& t : soh) {
      Vec2 k[6];
      for (int i = 0; i < 6; ++i) k[i] = {t[i], 0.0};
      soh_canon.push_back(canonicalize(k, 6, 1));
    }
  }

  struct ChunkState {
    std::vector<ClassMap> classes;
    std::vector<Acc> nonres;
    double violations = 0.0;
    std::string violation_witness;
    std::vector<char> soh_found;
  };
  std::vector<ChunkState> st(kWalkChunks);
  for (auto& s : st) {
    s.classes.resize(nG);
    s.nonres.resize(nG);
    s.soh_found.assign(soh.size(), 0);
  }

  rep.walk = walk_gamma(g, n, opt.Kmax, opt.guard, [&](std::size_t chunk, const WalkItem& it) {
    auto& S = st[chunk];
    const CanonicalTuple ct = canonicalize(it.k, n, opt.d);
    const double om = omega_raw(it.k, n);
    if (om == 0.0)
      for (std::size_t i = 0; i < soh_canon.size(); ++i)
        if (same_canonical(ct, soh_canon[i])) S.soh_found[i] = 1;
    bool need_m = false;
    double mval = 0.0;
    for (std::size_t gi = 0; gi < nG; ++gi) {
      const Classification c = classify_canonical(ct, opt.N, ths[gi]);
      std::string cls;
      if (c.verdict == Verdict::BelowThreshold) {
        cls = "below-threshold";
      } else if (c.verdict == Verdict::Resonant) {
        cls = std::string("resonant-") + case_name(c.rcase);
      } else {
        cls = std::string("nonresonant:") + rule_name(c.rule);
      }
      Acc& a = S.classes[gi][cls];
      a.count += it.weight;
      if (c.verdict != Verdict::BelowThreshold) {
        if (!need_m) {
          mval = m_multiplier_raw(it.k, n, ms);
          need_m = true;
        }
        a.min_abs_omega = std::min(a.min_abs_omega, std::abs(om));
        if (c.verdict == Verdict::NonResonant) {
          if (om == 0.0) {
            S.violations += it.weight;
            if (S.violation_witness.empty()) S.violation_witness = tuple_str(it.k, n, opt.d);
            continue;
          }
          const double r = std::abs(mval) / std::abs(om);
          a.ratio(r, it.k, n, opt.d);
          a.min_lb = std::min(a.min_lb, std::abs(om) / rule_lower_bound(c.rule, ct));
          S.nonres[gi].ratio(r, it.k, n, opt.d);
        } else {
          a.ratio(std::abs(mval) / resonant_bound(ct, ms), it.k, n, opt.d);
        }
      }
      if (c.demoted != Rule::None) S.classes[gi][std::string("demoted:") + rule_name(c.demoted)].count += it.weight;
    }
  });

  std::vector<ClassMap> classes(nG);
  std::vector<Acc> nonres(nG);
  std::vector<char> found(soh.size(), 0);
  for (auto& s : st) {
    for (std::size_t gi = 0; gi < nG; ++gi) {
      for (auto& [k, v] : s.classes[gi]) classes[gi][k].merge(v);
      nonres[gi].merge(s.nonres[gi]);
    }
    rep.violations += s.violations;
    if (rep.violation_witness.empty()) rep.violation_witness = s.violation_witness;
    for (std::size_t i = 0; i < soh.size(); ++i) found[i] |= s.soh_found[i];
  }
  rep.expected_ordered = ordered_gamma_count(n, opt.d, opt.Kmax);
  for (std::size_t gi = 0; gi < nG; ++gi) {
    for (const auto& [name, a] : classes[gi]) {
      CensusRow r;
      r.gap = opt.gaps[gi];
      r.cls = name;
      r.count = a.count;
      r.min_abs_omega = std::isfinite(a.min_abs_omega) ? a.min_abs_omega : 0.0;
      r.has_ratio = a.has_ratio;
      r.max_ratio = a.has_ratio ? a.max_ratio : 0.0;
      r.min_lower_bound = std::isfinite(a.min_lb) ? a.min_lb : 0.0;
      r.witness = a.witness;
      rep.rows.push_back(r);
    }
    rep.nonresonant_sup.push_back(nonres[gi].has_ratio ? nonres[gi].max_ratio : 0.0);
    rep.nonresonant_witness.push_back(nonres[gi].witness);
  }
  for (std::size_t i = 0; i < soh.size(); ++i) {
    Vec2 k[6];
    for (int j = 0; j < 6; ++j) k[j] = {soh[i][j], 0.0};
    SohingerCheck sc;
    sc.K = static_cast<int>(i) + 1;
    sc.tuple = tuple_str(k, 6, 1);
    sc.omega = omega_raw(k, 6);
    bool ok = found[i] && sc.omega == 0.0;
    for (const auto& th : ths) {
      const auto c = classify(k, 6, 1, opt.N, th);
      if (c.verdict == Verdict::NonResonant) ok = false;
      sc.verdict = c.verdict == Verdict::Resonant ? std::string("Resonant(case ") + case_name(c.rcase) + ")"
                                                  : std::string("BelowThreshold");
    }
    sc.passed = ok;
    rep.sohinger.push_back(sc);
  }
  return rep;
}

std::string CensusReport::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "gap_factor,class,count,min_abs_omega,max_ratio,min_lower_bound_ratio,witness_tuple\n";
  for (const auto& r : rows) {
    os << r.gap << ',' << r.cls << ',' << r.count << ',' << r.min_abs_omega << ',';
    if (r.has_ratio) os << r.max_ratio;
    os << ',';
    if (r.cls.rfind("nonresonant:", 0) == 0) os << r.min_lower_bound;
    os << ",\"" << r.witness << "\"\n";
  }
  return os.str();
}

nlohmann::json CensusReport::to_json() const {
  nlohmann::json j;
  j["N"] = options.N;
  j["Kmax"] = options.Kmax;
  j["d"] = options.d;
  j["s"] = options.s;
  j["G"] = options.gaps;
  j["dominance"] = options.dominance;
  j["guard"] = options.guard;
  j["lambda"] = options.geometry.lambda;
  j["canonical_count"] = walk.canonical_count;
  j["ordered_count"] = walk.ordered_count;
  j["raw_enumeration_size"] = walk.raw_count;
  j["expected_ordered_count"] = expected_ordered;
  j["partition_ok"] = partition_ok();
  j["violations"] = violations;
  if (!violation_witness.empty()) j["violation_witness"] = violation_witness;
  j["nonresonant_sup"] = nonresonant_sup;
  j["nonresonant_witness"] = nonresonant_witness;
  auto& s = j["sohinger"] = nlohmann::json::array();
  for (const auto& c : sohinger)
    s.push_back({{"K", c.K}, {"tuple", c.tuple}, {"omega", c.omega}, {"verdict", c.verdict}, {"passed", c.passed}});
  return j;
}

BoundRegion parse_region(const std::string& s) {
  if (s == "i") return BoundRegion::I;
  if (s == "ii") return BoundRegion::II;
  if (s == "iii") return BoundRegion::III;
  if (s == "iv") return BoundRegion::IV;
  if (s == "2d-resonant") return BoundRegion::Resonant2d;
  if (s == "2d-nonresonant") return BoundRegion::NonResonant2d;
  if (s == "sigma6") return BoundRegion::Sigma6;
  if (s == "sigma4") return BoundRegion::Sigma4;
  throw ValidationError("region", "unknown region '" + s + "'");
}

const char* region_name(BoundRegion r) {
  switch (r) {
    case BoundRegion::I: return "i";
    case BoundRegion::II: return "ii";
    case BoundRegion::III: return "iii";
    case BoundRegion::IV: return "iv";
    case BoundRegion::Resonant2d: return "2d-resonant";
    case BoundRegion::NonResonant2d: return "2d-nonresonant";
    case BoundRegion::Sigma6: return "sigma6";
    case BoundRegion::Sigma4: return "sigma4";
  }
  return "?";
}

int region_dimension(BoundRegion r) {
  return r == BoundRegion::Resonant2d || r == BoundRegion::NonResonant2d || r == BoundRegion::Sigma4 ? 2 : 1;
}

int default_verify_kmax(int d, double N) {
  return d == 1 ? static_cast<int>(3 * N) : static_cast<int>(std::ceil(N));
}

namespace {

// Ratio of |symbol| to the region's bound, or a negative value when the tuple
// lies outside the region.
double region_ratio(BoundRegion r, const Vec2* k, const CanonicalTuple& ct, const Classification& c,
                    const SmoothingSymbol& ms, double G, double& mcache, bool& have_m) {
  auto mraw = [&] {
    if (!have_m) {
      mcache = std::abs(m_multiplier_raw(k, ct.n, ms));
      have_m = true;
    }
    return mcache;
  };
  auto mN = [&](double x) { return m_value(x, ms) * x; };
  // <k> = max(|k|, 1) in place of the dyadic size of each frequency
  auto br = [&](int r) { return std::max(ct.kstar(r), 1.0); };
  const double n1 = br(0), n3 = br(2);
  switch (r) {
    case BoundRegion::Sigma6:
    case BoundRegion::Sigma4: {
      double p = 1.0;
      for (int i = 0; i < ct.n; ++i) p *= m_value(ct.mag[i], ms);
      return p;
    }
    case BoundRegion::I:
    case BoundRegion::Resonant2d:
      if (c.verdict != Verdict::Resonant) return -1.0;
      return mraw() / (mN(n1) * mN(n3));
    case BoundRegion::II:
      if (c.verdict != Verdict::Resonant || c.rcase != ResonantCase::I) return -1.0;
      return mraw() / (n3 * n3);
    case BoundRegion::III:
    case BoundRegion::IV: {
      if (c.verdict != Verdict::Resonant || c.rcase != ResonantCase::II) return -1.0;
      int mask = 0;
      for (int i = 0; i < 4; ++i) mask |= 1 << ct.order[i];
      if (mask != 0b1111) return -1.0;
      const double n5 = br(4);
      const double p12 = std::abs(ct.c[0][0] + ct.c[1][0]);
      const double p34 = std::abs(ct.c[2][0] + ct.c[3][0]);
      if (r == BoundRegion::III) {
        if (std::max(p12, p34) > G * n5) return -1.0;
        return mraw() / (mN(n1) * n5);
      }
      if (p12 < G * n5) return -1.0;
      if (!(p12 > p34 / G && p34 > p12 / G)) return -1.0;
      return mraw() / (mN(n1) * p12);
    }
    case BoundRegion::NonResonant2d:
      if (c.verdict != Verdict::NonResonant) return -1.0;
      return mraw() / std::abs(c.omega);
  }
  return -1.0;
}

}  // namespace

std::vector<VerifyRow> verify_multiplier_bounds(const std::vector<BoundRegion>& regions, const VerifyOptions& opt) {
  if (regions.empty()) throw ValidationError("region", "no regions requested");
  const int d = region_dimension(regions.front());
  for (auto r : regions)
    if (region_dimension(r) != d) throw ValidationError("region", "regions of different dimension in one walk");
  if (opt.gaps.empty()) throw ValidationError("gap_factor", "at least one gap factor is required");
  if (!(opt.s > 0.0 && opt.s < 1.0)) throw ValidationError("s", "must lie in (0, 1)");
  std::vector<Thresholds> ths;
  for (double G : opt.gaps) ths.push_back(thresholds_for(G, opt.dominance));
  TorusGeometry g = opt.geometry;
  if (g.dimension != d) g = d == 1 ? unit_circle() : build_geometry(2, {1.0}, 1.0);
  const int Kmax = opt.Kmax > 0 ? opt.Kmax : default_verify_kmax(d, opt.N);
  const int n = d == 1 ? 6 : 4;
  const auto ms = make_symbol(opt.N, 1.0 - opt.s);
  const std::size_t nR = regions.size(), nG = ths.size();

  std::vector<std::vector<Acc>> st(kWalkChunks, std::vector<Acc>(nR * nG));
  walk_gamma(g, n, Kmax, opt.guard, [&](std::size_t chunk, const WalkItem& it) {
    if (!in_upsilon(it.k, n, opt.N)) return;
    const CanonicalTuple ct = canonicalize(it.k, n, d);
    double mc = 0.0;
    bool have = false;
    for (std::size_t gi = 0; gi < nG; ++gi) {
      const Classification c = classify_canonical(ct, opt.N, ths[gi]);
      for (std::size_t ri = 0; ri < nR; ++ri) {
        const double r = region_ratio(regions[ri], it.k, ct, c, ms, ths[gi].gap, mc, have);
        if (r < 0.0) continue;
        Acc& a = st[chunk][ri * nG + gi];
        a.count += it.weight;
        a.ratio(r, it.k, n, d);
      }
    }
  });
  std::vector<VerifyRow> out;
  for (std::size_t ri = 0; ri < nR; ++ri)
    for (std::size_t gi = 0; gi < nG; ++gi) {
      Acc a;
      for (const auto& s : st) a.merge(s[ri * nG + gi]);
      VerifyRow row;
      row.region = regions[ri];
      row.N = opt.N;
      row.Kmax = Kmax;
      row.gap = opt.gaps[gi];
      row.count = a.count;
      row.sup_ratio = a.has_ratio ? a.max_ratio : 0.0;
      row.witness = a.witness;
      out.push_back(row);
    }
  return out;
}

VerifyRow verify_multiplier_bounds(BoundRegion region, double N, int Kmax, double s, const Thresholds& th) {
  VerifyOptions o;
  o.N = N;
  o.Kmax = Kmax;
  o.s = s;
  o.gaps = {th.gap};
  o.dominance = th.dominance;
  return verify_multiplier_bounds(std::vector<BoundRegion>{region}, o).front();
}

std::vector<StabilityRow> stability_table(const std::vector<VerifyRow>& rows) {
  std::map<int, std::vector<const VerifyRow*>> by_region;
  for (const auto& r : rows) by_region[static_cast<int>(r.region)].push_back(&r);
  std::vector<StabilityRow> out;
  for (const auto& [reg, list] : by_region) {
    StabilityRow s;
    s.region = static_cast<BoundRegion>(reg);
    s.min_sup = std::numeric_limits<double>::infinity();
    std::map<double, std::pair<const VerifyRow*, const VerifyRow*>> ends;  // per G: smallest and largest N
    for (const VerifyRow* r : list) {
      if (r->empty()) continue;
      if (!std::isfinite(r->sup_ratio)) s.finite = false;
      s.min_sup = std::min(s.min_sup, r->sup_ratio);
      s.max_sup = std::max(s.max_sup, r->sup_ratio);
      auto& e = ends[r->gap];
      if (!e.first || r->N < e.first->N) e.first = r;
      if (!e.second || r->N > e.second->N) e.second = r;
    }
    if (!std::isfinite(s.min_sup)) s.min_sup = 0.0;
    s.spread = s.min_sup > 0.0 ? s.max_sup / s.min_sup : (s.max_sup > 0.0 ? INFINITY : 1.0);
    for (const auto& [G, e] : ends)
      if (e.first && e.second && e.second->sup_ratio > 2.0 * e.first->sup_ratio) s.growth = true;
    s.stable = s.finite && !s.growth && s.spread <= 2.0;
    out.push_back(s);
  }
  return out;
}

std::string verify_csv(const std::vector<VerifyRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "region,N,Kmax,gap_factor,count,max_ratio,witness_tuple\n";
  for (const auto& r : rows)
    os << region_name(r.region) << ',' << r.N << ',' << r.Kmax << ',' << r.gap << ',' << r.count << ','
       << r.sup_ratio << ",\"" << r.witness << "\"\n";
  return os.str();
}

std::string stability_csv(const std::vector<StabilityRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "region,min_sup,max_sup,spread,growth,finite,stable\n";
  for (const auto& r : rows)
    os << region_name(r.region) << ',' << r.min_sup << ',' << r.max_sup << ',' << r.spread << ','
       << (r.growth ? 1 : 0) << ',' << (r.finite ? 1 : 0) << ',' << (r.stable ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace nlslab
