#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/classify.hpp"
#include "nlslab/geometry.hpp"

namespace nlslab {

// Exhaustive walk over Gamma_n restricted to the lattice |n_a| <= Kmax, one
// representative per orbit of (permutations inside the odd and the even group)
// x (exchange of the groups). `weight` is the number of ordered tuples in the
// orbit, so weighted counts are counts of ordered tuples.
struct GammaWalk {
  TorusGeometry geometry;
  int n = 6;
  int Kmax = 8;
  double canonical_count = 0.0;  // representatives visited
  double ordered_count = 0.0;    // sum of weights
  double raw_count = 0.0;        // (2 Kmax + 1)^{(n-1) d}, the unreduced enumeration size
};

struct WalkItem {
  const Vec2* k;  // odd slots carry the first group, even slots the second
  double weight;
};

// Count of representatives without visiting them.
double gamma_walk_size(const TorusGeometry& g, int n, int Kmax);

// Calls visit(chunk, item) for every representative. Chunks (64 of them) are
// contiguous ranges of the sum key, so per-chunk partials reduced in chunk
// order do not depend on the thread count. Throws BudgetError when the number
// of representatives exceeds `guard`.
GammaWalk walk_gamma(const TorusGeometry& g, int n, int Kmax, double guard,
                     const std::function<void(std::size_t, const WalkItem&)>& visit);
inline constexpr std::size_t kWalkChunks = 64;

// Number of ordered tuples in Gamma_n with entries in [-Kmax, Kmax]^d, by
// counting zero-sum sequences one axis at a time.
double ordered_gamma_count(int n, int d, int Kmax);

struct CensusOptions {
  TorusGeometry geometry;  // defaults to the unit circle
  int d = 1;
  double N = 4.0;
  int Kmax = 8;
  double s = 0.5;
  std::vector<double> gaps{4.0};
  double dominance = 2.0;
  double guard = 1e9;
};

struct CensusRow {
  double gap = 4.0;
  std::string cls;        // "below-threshold", "resonant-i", ..., "nonresonant:<rule>", "demoted:<rule>"
  double count = 0.0;     // ordered tuples
  double min_abs_omega = 0.0;
  double max_ratio = 0.0;        // |M| / |Omega| (non-resonant), |M| / (m(N1*) N1* m(N3*) N3*) (resonant)
  double min_lower_bound = 0.0;  // non-resonant: min |Omega| / (the rule's lower bound)
  std::string witness;           // tuple attaining max_ratio
  bool has_ratio = false;
};

struct SohingerCheck {
  int K = 1;
  std::string tuple;
  double omega = 0.0;
  std::string verdict;
  bool passed = false;
};

struct CensusReport {
  CensusOptions options;
  GammaWalk walk;
  double expected_ordered = 0.0;  // independent zero-sum count
  std::vector<CensusRow> rows;
  std::vector<SohingerCheck> sohinger;
  // Per gap factor: max over non-resonant tuples of |M| / |Omega| and its witness.
  std::vector<double> nonresonant_sup;
  std::vector<std::string> nonresonant_witness;
  // Non-resonant tuples with Omega = 0 or a lower bound violated (must stay 0).
  double violations = 0.0;
  std::string violation_witness;

  bool partition_ok() const;
  std::string csv() const;
  nlohmann::json to_json() const;
};

CensusReport resonance_census(const CensusOptions& opt);

enum class BoundRegion { I, II, III, IV, Resonant2d, NonResonant2d, Sigma6, Sigma4 };
BoundRegion parse_region(const std::string& s);
const char* region_name(BoundRegion r);
int region_dimension(BoundRegion r);

struct VerifyOptions {
  TorusGeometry geometry;
  double N = 4.0;
  int Kmax = 0;  // 0: 3N in 1d, N in 2d
  double s = 0.5;
  std::vector<double> gaps{4.0};
  double dominance = 2.0;
  double guard = 1e9;
};

struct VerifyRow {
  BoundRegion region = BoundRegion::I;
  double N = 0.0;
  int Kmax = 0;
  double gap = 4.0;
  double count = 0.0;  // ordered tuples in the region
  double sup_ratio = 0.0;
  std::string witness;
  bool empty() const { return count == 0.0; }
};

int default_verify_kmax(int d, double N);

// sup of |symbol| / bound over every lattice tuple in each requested region, for
// every gap factor, in a single walk. All regions must share one dimension.
std::vector<VerifyRow> verify_multiplier_bounds(const std::vector<BoundRegion>& regions, const VerifyOptions& opt);
VerifyRow verify_multiplier_bounds(BoundRegion region, double N, int Kmax, double s, const Thresholds& th = {});

struct StabilityRow {
  BoundRegion region = BoundRegion::I;
  double min_sup = 0.0;
  double max_sup = 0.0;
  double spread = 0.0;  // max / min over all nonempty (N, G)
  bool growth = false;  // for some G the sup at the largest N exceeds twice the sup at the smallest N
  bool stable = false;  // spread <= 2 and no growth
  bool finite = true;
};

std::vector<StabilityRow> stability_table(const std::vector<VerifyRow>& rows);

std::string verify_csv(const std::vector<VerifyRow>& rows);
std::string stability_csv(const std::vector<StabilityRow>& rows);

}  // namespace nlslab
