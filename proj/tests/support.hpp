#pragma once

// Seeded generators and slow reference implementations shared by the tests.
// The oracles deliberately avoid the library's own arithmetic helpers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "pbbase/cnf_builder.hpp"
#include "pbbase/cost.hpp"
#include "pbbase/mixed_radix.hpp"
#include "pbbase/pb_constraint.hpp"

namespace support {

using pbbase::Base;
using pbbase::CostKind;
using pbbase::Int;
using pbbase::Multiset;

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  Int uniform(Int lo, Int hi) { return lo + static_cast<Int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1u; }
};

inline Multiset random_multiset(SplitMix64& rng, std::size_t max_size, Int max_value) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<Int>(max_size)));
  std::vector<Int> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(1, max_value));
  return Multiset(std::move(v));
}

/// Radices drawn from [2, max_radix] while the product stays <= max_product.
inline Base random_base(SplitMix64& rng, Int max_product, std::size_t max_len, Int max_radix = 12) {
  std::vector<Int> r;
  Int product = 1;
  const auto len = static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(max_len)));
  while (r.size() < len) {
    const Int p = rng.uniform(2, max_radix);
    if (product > max_product / p) break;
    product *= p;
    r.push_back(p);
  }
  return Base(std::move(r));
}

/// Digits extracted most significant first by subtracting weight multiples.
inline std::vector<Int> oracle_digits(Int v, const Base& b) {
  std::vector<Int> w{1};
  for (Int r : b.radices()) w.push_back(w.back() * r);
  std::vector<Int> d(w.size());
  Int rest = v;
  for (std::size_t i = w.size(); i-- > 0;) {
    d[i] = rest / w[i];
    rest -= d[i] * w[i];
  }
  return d;
}

inline Int ceil_log2(Int n) {
  Int k = 0;
  while ((Int{1} << k) < n) ++k;
  return k;
}

/// Comparator count of the sorter model.
inline Int oracle_f(Int n) {
  static const Int table[] = {0, 0, 1, 3, 5, 9, 12, 16, 19};
  if (n <= 8) return table[n];
  const Int k = ceil_log2(n);
  return n * k * (k - 1) / 4 + n - 1;
}

struct OracleColumns {
  std::vector<Int> sums, carries;
};

inline OracleColumns oracle_columns(const Multiset& s, const Base& b) {
  OracleColumns c;
  c.sums.assign(b.size() + 1, 0);
  for (Int v : s.elements()) {
    const auto d = oracle_digits(v, b);
    for (std::size_t j = 0; j < d.size(); ++j) c.sums[j] += d[j];
  }
  c.carries.assign(b.size() + 1, 0);
  for (std::size_t j = 0; j < b.size(); ++j) c.carries[j + 1] = (c.sums[j] + c.carries[j]) / b[j];
  return c;
}

inline Int oracle_cost(CostKind kind, const Multiset& s, const Base& b) {
  const auto c = oracle_columns(s, b);
  Int total = 0;
  for (std::size_t j = 0; j < c.sums.size(); ++j) {
    switch (kind) {
      case CostKind::SumDigits: total += c.sums[j]; break;
      case CostKind::SumCarry: total += c.sums[j] + c.carries[j]; break;
      case CostKind::NumComp: total += oracle_f(c.sums[j] + c.carries[j]); break;
    }
  }
  return total;
}

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Every base with product <= max and radices <= limit (the empty base too).
inline void for_each_base(Int max, Int limit, bool primes_only, const std::function<void(const Base&)>& fn) {
  std::vector<Int> r;
  std::function<void(Int)> rec = [&](Int product) {
    fn(Base(r));
    for (Int p = 2; p <= limit && product * p <= max; ++p) {
      if (primes_only && !is_prime(p)) continue;
      r.push_back(p);
      rec(product * p);
      r.pop_back();
    }
  };
  rec(1);
}

inline Int oracle_optimum(CostKind kind, const Multiset& s, Int limit, bool primes_only) {
  Int best = std::numeric_limits<Int>::max();
  for_each_base(s.max(), limit, primes_only, [&](const Base& b) { best = std::min(best, oracle_cost(kind, s, b)); });
  return best;
}

/// Normal-form constraint over variables 1..n.
inline pbbase::PbConstraint random_constraint(SplitMix64& rng, std::uint32_t max_vars, Int max_coef) {
  pbbase::PbConstraint c;
  const auto n = static_cast<std::uint32_t>(rng.uniform(1, max_vars));
  for (std::uint32_t v = 1; v <= n; ++v)
    c.terms.push_back({rng.uniform(1, max_coef), pbbase::Lit::make(v, rng.uniform(0, 4) == 0)});
  // thresholds slightly past the sum exercise the unsatisfiable path
  c.threshold = rng.uniform(1, c.coefficient_sum() + 2);
  return c;
}

inline bool arithmetic_holds(const pbbase::PbConstraint& c, std::uint64_t mask) {
  Int lhs = 0;
  for (const auto& t : c.terms) {
    const bool x = (mask >> (t.lit.var() - 1)) & 1u;
    if (x != t.lit.negated()) lhs += t.coef;
  }
  return lhs >= c.threshold;
}

}  // namespace support
