#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pbbase/cnf_builder.hpp"

namespace pbbase {

/// Comparator between line i and line j (i < j): after it, line i carries
/// the maximum and line j the minimum.
using ComparatorPair = std::pair<std::size_t, std::size_t>;

/// Comparator schedule sorting n lines in descending order. Optimal-size
/// networks for n <= 8; Batcher's odd-even merge sort otherwise, where n must
/// be a power of two.
std::vector<ComparatorPair> comparator_schedule(std::size_t n);

/// (hi, lo) = (a | b, a & b) with six clauses. Constant inputs fold without
/// new variables, clauses, or a comparator count.
std::pair<Lit, Lit> comparator(Lit a, Lit b, CnfBuilder& builder);

/// Descending sort of the inputs; output has the same length. Sizes above 8
/// that are not powers of two are padded with FALSE to the next power of two.
UnaryBus sorting_network(std::span<const Lit> inputs, CnfBuilder& builder);

struct Normalized {
  UnaryBus remainder;          // unary (value mod r)
  std::vector<Lit> carries;    // y_r, y_2r, ...
};

/// Splits a sorted bus into carries (every r-th output) and a remainder bus
/// whose unary value equals the input's value mod r.
Normalized normalizer(const UnaryBus& sorted, std::int64_t radix, CnfBuilder& builder);

/// Literal for "bus >= c": TRUE when c == 0, FALSE when c exceeds the bus.
Lit at_least(const UnaryBus& bus, std::int64_t c);

}  // namespace pbbase
