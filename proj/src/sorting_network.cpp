#include "pbbase/sorting_network.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pbbase {

namespace {

// Smallest known networks (sizes 0,0,1,3,5,9,12,16,19), layer by layer.
const std::vector<ComparatorPair> kOptimal[9] = {
    {},
    {},
    {{0, 1}},
    {{0, 2}, {0, 1}, {1, 2}},
    {{0, 2}, {1, 3}, {0, 1}, {2, 3}, {1, 2}},
    {{0, 3}, {1, 4}, {0, 2}, {1, 3}, {0, 1}, {2, 4}, {1, 2}, {3, 4}, {2, 3}},
    {{0, 5}, {1, 3}, {2, 4}, {1, 2}, {3, 4}, {0, 3}, {2, 5}, {0, 1}, {2, 3}, {4, 5}, {1, 2}, {3, 4}},
    {{0, 6}, {2, 3}, {4, 5}, {0, 2}, {1, 4}, {3, 6}, {0, 1}, {2, 5}, {3, 4}, {1, 2}, {4, 6}, {2, 3},
     {4, 5}, {1, 2}, {3, 4}, {5, 6}},
    {{0, 2}, {1, 3}, {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}, {0, 1}, {2, 3}, {4, 5}, {6, 7},
     {2, 4}, {3, 5}, {1, 4}, {3, 6}, {1, 2}, {3, 4}, {5, 6}},
};

std::vector<ComparatorPair> odd_even_merge_sort(std::size_t n) {
  std::vector<ComparatorPair> out;
  for (std::size_t p = 1; p < n; p <<= 1)
    for (std::size_t k = p; k >= 1; k >>= 1)
      for (std::size_t j = k % p; j + k < n; j += 2 * k)
        for (std::size_t i = 0; i < std::min(k, n - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) out.emplace_back(i + j, i + j + k);
  return out;
}

}  // namespace

std::vector<ComparatorPair> comparator_schedule(std::size_t n) {
  if (n <= 8) return kOptimal[n];
  if (!std::has_single_bit(n)) throw std::invalid_argument("Batcher schedule needs a power-of-two size");
  return odd_even_merge_sort(n);
}

std::pair<Lit, Lit> comparator(Lit a, Lit b, CnfBuilder& builder) {
  if (a.is_true() || b.is_false()) return {a, b};
  if (b.is_true() || a.is_false()) return {b, a};
  const Lit hi = builder.fresh();
  const Lit lo = builder.fresh();
  builder.add_clause({~a, hi});
  builder.add_clause({~b, hi});
  builder.add_clause({a, b, ~hi});
  builder.add_clause({~lo, a});
  builder.add_clause({~lo, b});
  builder.add_clause({~a, ~b, lo});
  builder.count_comparator();
  return {hi, lo};
}

UnaryBus sorting_network(std::span<const Lit> inputs, CnfBuilder& builder) {
  const std::size_t n = inputs.size();
  UnaryBus lines(inputs.begin(), inputs.end());
  if (n <= 1) return lines;
  const std::size_t width = n <= 8 ? n : std::bit_ceil(n);
  lines.resize(width, Lit::False());
  for (const auto& [i, j] : comparator_schedule(width)) {
    const auto [hi, lo] = comparator(lines[i], lines[j], builder);
    lines[i] = hi;
    lines[j] = lo;
  }
  lines.resize(n);
  return lines;
}

Lit at_least(const UnaryBus& bus, std::int64_t c) {
  if (c <= 0) return Lit::True();
  if (c > static_cast<std::int64_t>(bus.size())) return Lit::False();
  return bus[static_cast<std::size_t>(c - 1)];
}

Normalized normalizer(const UnaryBus& sorted, std::int64_t radix, CnfBuilder& builder) {
  if (radix < 2) throw std::invalid_argument("normalizer radix must be >= 2");
  const auto len = static_cast<std::int64_t>(sorted.size());
  Normalized out;
  if (len < radix) {
    out.remainder = sorted;
    return out;
  }
  for (std::int64_t t = radix; t <= len; t += radix) out.carries.push_back(at_least(sorted, t));

  // R_i <-> OR_t (y_{t*r+i} & ~y_{(t+1)*r})
  out.remainder.reserve(static_cast<std::size_t>(radix - 1));
  std::vector<Lit> terms;
  for (std::int64_t i = 1; i < radix; ++i) {
    terms.clear();
    for (std::int64_t base = 0; base + i <= len; base += radix)
      terms.push_back(builder.make_and(at_least(sorted, base + i), ~at_least(sorted, base + radix)));
    out.remainder.push_back(builder.make_or(terms));
  }
  return out;
}

}  // namespace pbbase
