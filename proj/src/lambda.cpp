#include "nlslab/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

std::vector<cd> odd_coefficients(const SpectralField& u) { return u.coeffs(); }

std::vector<cd> even_coefficients(const SpectralField& u) {
  std::vector<cd> c(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode k = u.mode(i);
    c[i] = std::conj(u[{-k[0], -k[1]}]);
  }
  return c;
}

namespace {

constexpr std::size_t kChunks = 64;

void check_fields(const std::vector<SpectralField>& fields, int n) {
  if (static_cast<int>(fields.size()) != n)
    throw ValidationError("fields", "expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
  for (const auto& f : fields)
    if (f.geometry() != fields[0].geometry()) throw ValidationError("fields", "geometry mismatch");
}

}  // namespace

cd lambda_direct_raw(const std::function<cd(const Vec2*)>& sym, int n, const std::vector<SpectralField>& fields,
                     const std::function<bool(const Mode*)>& keep) {
  check_fields(fields, n);
  const auto& g = fields[0].geometry();
  double cost = 1.0;
  for (int i = 0; i + 1 < n; ++i) cost *= static_cast<double>(fields[i].size());
  if (cost > kDirectSumGuard) throw BudgetError("direct Lambda sum exceeds guard", cost);

  std::vector<std::vector<cd>> coef(n);
  for (int i = 0; i < n; ++i) coef[i] = i % 2 == 0 ? odd_coefficients(fields[i]) : even_coefficients(fields[i]);
  const SpectralField& last = fields[n - 1];

  std::vector<cd> partial(kChunks, 0.0);
  parallel_chunks(fields[0].size(), kChunks, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    std::vector<std::size_t> idx(n - 1, 0);
    std::vector<Mode> modes(n);
    std::vector<Vec2> k(n);
    cd acc = 0.0;
    for (std::size_t i0 = b; i0 < e; ++i0) {
      if (coef[0][i0] == 0.0) continue;
      idx.assign(n - 1, 0);
      idx[0] = i0;
      for (;;) {
        cd prod = 1.0;
        Mode s{0, 0};
        bool zero = false;
        for (int i = 0; i + 1 < n; ++i) {
          const cd c = coef[i][idx[i]];
          if (c == 0.0) {
            zero = true;
            break;
          }
          prod *= c;
          modes[i] = fields[i].mode(idx[i]);
          s[0] += modes[i][0];
          s[1] += modes[i][1];
        }
        if (!zero) {
          modes[n - 1] = {-s[0], -s[1]};
          if (last.contains(modes[n - 1])) {
            const cd cl = coef[n - 1][last.index(modes[n - 1])];
            if (cl != 0.0 && (!keep || keep(modes.data()))) {
              for (int i = 0; i < n; ++i) k[i] = frequency(g, modes[i]);
              acc += sym(k.data()) * prod * cl;
            }
          }
        }
        int p = n - 2;
        while (p >= 1 && ++idx[p] == fields[p].size()) idx[p--] = 0;
        if (p < 1) break;
      }
    }
    partial[chunk] = acc;
  });
  cd total = 0.0;
  for (const cd& v : partial) total += v;
  return total * std::pow(g.weight(), n - 1);
}

namespace {

using SlotFactor = std::function<cd(const Vec2&)>;

// Factorizations sym = sum_terms prod_i g_i(k_i) for the factorizable primitives.
std::vector<std::vector<SlotFactor>> factorization(const SymbolSpec& sym) {
  const auto ms = sym.params.smoothing();
  auto m = [ms](const Vec2& k) { return cd(m_value(std::hypot(k[0], k[1]), ms)); };
  std::vector<std::vector<SlotFactor>> terms;
  switch (sym.name) {
    case SymbolName::Sigma2:
      for (int a = 0; a < sym.params.d; ++a) {
        auto f = [ms, a](const Vec2& k) { return cd(m_value(std::hypot(k[0], k[1]), ms) * k[a]); };
        terms.push_back({f, f});
      }
      break;
    case SymbolName::Sigma4:
    case SymbolName::Sigma6:
      terms.push_back(std::vector<SlotFactor>(sym.arity, m));
      break;
    default:
      throw ValidationError("strategy", std::string("physical strategy needs a factorizable symbol, got ") + sym.label);
  }
  return terms;
}

cd lambda_physical(const SymbolSpec& sym, const std::vector<SpectralField>& fields) {
  const int n = sym.arity;
  check_fields(fields, n);
  const auto& g = fields[0].geometry();
  std::array<int, 2> K{0, 0};
  for (const auto& f : fields)
    for (int a = 0; a < 2; ++a) K[a] = std::max(K[a], f.cutoff()[a]);
  std::array<int, 2> M{n * K[0] + 1, g.dimension == 2 ? n * K[1] + 1 : 1};
  for (int a = 0; a < g.dimension; ++a) M[a] = std::max(M[a], 2 * K[a] + 1);

  cd total = 0.0;
  for (const auto& term : factorization(sym)) {
    std::vector<cd> acc;
    for (int i = 0; i < n; ++i) {
      const SpectralField& f = fields[i];
      SpectralField c(g, K);
      const auto coef = i % 2 == 0 ? odd_coefficients(f) : even_coefficients(f);
      for (std::size_t j = 0; j < f.size(); ++j) c[f.mode(j)] = term[i](f.frequency(j)) * coef[j];
      PhysicalGrid pg = to_physical(c, M);
      if (acc.empty()) {
        acc = std::move(pg.values);
      } else {
        kernels::cmul(acc.data(), pg.values.data(), acc.size());
      }
    }
    PhysicalGrid probe{g, M, {}};
    cd s = 0.0;
    for (const cd& v : acc) s += v;
    total += s * probe.cell_volume();
  }
  return total;
}

}  // namespace

cd lambda_eval(const SymbolSpec& sym, const std::vector<SpectralField>& fields, LambdaStrategy strategy) {
  const cd pre = lambda_prefactor(sym.name, sym.params.sign);
  if (strategy == LambdaStrategy::Physical) return pre * lambda_physical(sym, fields);
  return pre * lambda_direct_raw(sym.eval, sym.arity, fields);
}

cd lambda_eval(const SymbolSpec& sym, const SpectralField& u, LambdaStrategy strategy) {
  return lambda_eval(sym, std::vector<SpectralField>(sym.arity, u), strategy);
}

SymmetricTable::SymmetricTable(const TorusGeometry& g, std::array<int, 2> K, int n,
                               const std::function<double(const Vec2*)>& sym, double max_entries)
    : geom_(g), K_(K), n_(n), m_(n / 2) {
  if (n < 2 || n % 2 || n > 6) throw ValidationError("n", "symmetric tables support n in {2, 4, 6}");
  const SpectralField lat(g, K);
  if (g.dimension == 1) K_[1] = 0;
  const int S = static_cast<int>(lat.size());

  // Multisets as nondecreasing index tuples, grouped by mode sum.
  std::vector<int> cur(m_, 0);
  std::map<std::pair<int, int>, std::vector<std::int32_t>> by_sum;
  std::vector<Mode> set_sum;
  for (;;) {
    const auto id = static_cast<std::int32_t>(perm_.size());
    Mode s{0, 0};
    double perm = 1.0, fact = 1.0;
    int run = 1;
    for (int i = 0; i < m_; ++i) {
      sets_.push_back(cur[i]);
      const Mode md = lat.mode(cur[i]);
      s[0] += md[0];
      s[1] += md[1];
      fact *= i + 1;
      if (i > 0 && cur[i] == cur[i - 1]) {
        ++run;
        perm *= run;
      } else {
        run = 1;
      }
    }
    perm_.push_back(fact / perm);
    set_sum.push_back(s);
    by_sum[{s[0], s[1]}].push_back(id);
    int p = m_ - 1;
    while (p >= 0 && cur[p] == S - 1) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q < m_; ++q) cur[q] = cur[p];
  }

  const std::size_t nsets = perm_.size();
  double pairs = 0.0;
  for (const auto& [key, ids] : by_sum) {
    auto it = by_sum.find({-key.first, -key.second});
    if (it != by_sum.end()) pairs += static_cast<double>(ids.size()) * static_cast<double>(it->second.size());
  }
  if (pairs > max_entries) throw BudgetError("symmetric table exceeds guard", pairs);

  struct Part {
    std::vector<std::int32_t> ia, ib;
    std::vector<double> v;
  };
  std::vector<Part> parts(kChunks);
  parallel_chunks(nsets, kChunks, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    Part& part = parts[chunk];
    std::vector<Vec2> k(n);
    for (std::size_t a = b; a < e; ++a) {
      const Mode s = set_sum[a];
      auto it = by_sum.find({-s[0], -s[1]});
      if (it == by_sum.end()) continue;
      for (int i = 0; i < m_; ++i) k[2 * i] = lat.frequency(static_cast<std::size_t>(sets_[a * m_ + i]));
      for (std::int32_t bset : it->second) {
        for (int i = 0; i < m_; ++i) k[2 * i + 1] = lat.frequency(static_cast<std::size_t>(sets_[bset * m_ + i]));
        const double v = sym(k.data());
        if (v == 0.0) continue;
        part.ia.push_back(static_cast<std::int32_t>(a));
        part.ib.push_back(bset);
        part.v.push_back(v);
      }
    }
  });
  for (auto& p : parts) {
    ia_.insert(ia_.end(), p.ia.begin(), p.ia.end());
    ib_.insert(ib_.end(), p.ib.begin(), p.ib.end());
    v_.insert(v_.end(), p.v.begin(), p.v.end());
  }
}

void SymmetricTable::group_values(const std::vector<cd>& c, std::vector<double>& re, std::vector<double>& im) const {
  const std::size_t nsets = perm_.size();
  re.resize(nsets);
  im.resize(nsets);
  for (std::size_t a = 0; a < nsets; ++a) {
    cd p = perm_[a];
    for (int i = 0; i < m_; ++i) p *= c[sets_[a * m_ + i]];
    re[a] = p.real();
    im[a] = p.imag();
  }
}

void SymmetricTable::group_values_sub(const std::vector<cd>& c, const std::vector<cd>& hc, std::vector<double>& re,
                                      std::vector<double>& im) const {
  const std::size_t nsets = perm_.size();
  re.resize(nsets);
  im.resize(nsets);
  for (std::size_t a = 0; a < nsets; ++a) {
    cd s = 0.0;
    for (int p = 0; p < m_; ++p) {
      cd t = hc[sets_[a * m_ + p]];
      for (int q = 0; q < m_; ++q)
        if (q != p) t *= c[sets_[a * m_ + q]];
      s += t;
    }
    s *= perm_[a];
    re[a] = s.real();
    im[a] = s.imag();
  }
}

cd SymmetricTable::sum(const std::vector<double>& fre, const std::vector<double>& fim, const std::vector<double>& gre,
                       const std::vector<double>& gim) const {
  std::vector<cd> partial(kChunks, 0.0);
  parallel_chunks(v_.size(), kChunks, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    partial[chunk] = kernels::contract(ia_.data() + b, ib_.data() + b, v_.data() + b, e - b, fre.data(), fim.data(),
                                       gre.data(), gim.data());
  });
  cd total = 0.0;
  for (const cd& v : partial) total += v;
  return total * std::pow(geom_.weight(), n_ - 1);
}

cd SymmetricTable::contract(const SpectralField& u) const {
  if (u.geometry() != geom_ || u.cutoff() != K_) throw ValidationError("field", "lattice differs from the table's");
  std::vector<double> fre, fim, gre, gim;
  group_values(odd_coefficients(u), fre, fim);
  group_values(even_coefficients(u), gre, gim);
  return sum(fre, fim, gre, gim);
}

cd SymmetricTable::contract_substituted(const SpectralField& u, const SpectralField& h) const {
  if (u.geometry() != geom_ || u.cutoff() != K_ || !u.same_lattice(h))
    throw ValidationError("field", "lattice differs from the table's");
  const auto cu = odd_coefficients(u), eu = even_coefficients(u);
  const auto ch = odd_coefficients(h), eh = even_coefficients(h);
  std::vector<double> fre, fim, gre, gim, hre, him;
  group_values(cu, fre, fim);
  group_values(eu, gre, gim);
  group_values_sub(cu, ch, hre, him);
  const cd odd_part = sum(hre, him, gre, gim);
  group_values_sub(eu, eh, hre, him);
  const cd even_part = sum(fre, fim, hre, him);
  return even_part - odd_part;
}

}  // namespace nlslab
