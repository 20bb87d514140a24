#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pbbase/mixed_radix.hpp"

namespace pbbase {

enum class CostKind { SumDigits, SumCarry, NumComp };

std::string_view to_string(CostKind kind) noexcept;
/// Accepts "digits"/"carry"/"comp" and the long names.
CostKind parse_cost_kind(std::string_view text);

/// Column sums and carries of S in base B.
///   s_j = sum_i a_ij,  c_0 = 0,  c_{j+1} = (s_j + c_j) div r_j  for j < k.
/// No carry leaves the msd position.
struct CostBreakdown {
  std::vector<Int> sums;
  std::vector<Int> carries;

  /// Inputs of the sorting network at position j: s_j + c_j.
  Int network_size(std::size_t j) const { return sums[j] + carries[j]; }
  std::vector<Int> network_sizes() const;
};

CostBreakdown breakdown(const Multiset& set, const Base& base);

/// Comparators in an n-input sorter: the optimal-network table for n <= 8,
/// Batcher's odd-even count n*ceil(log2 n)*(ceil(log2 n)-1)/4 + n - 1 above.
Int comparator_count(Int n);

Int sum_digits(const Multiset& set, const Base& base);
Int sum_carry(const Multiset& set, const Base& base);
Int num_comp(const Multiset& set, const Base& base);

Int cost(CostKind kind, const Multiset& set, const Base& base);
/// The part of cost(B) every extension of B pays as well.
Int partial_cost(CostKind kind, const Multiset& set, const Base& base);
/// Admissible estimate of what extending B adds on top of partial_cost.
Int heuristic(CostKind kind, const Multiset& set, const Base& base);
Int cost_alpha(CostKind kind, const Multiset& set, const Base& base);

/// Cost evaluation of one base, extendable in O(s) where s is the number of
/// distinct values still having a non-zero msd digit.
///
/// Only the msd column is kept: the remaining values' quotients div(v, prod B)
/// together with the accumulated cost of the already-fixed lower positions.
class CostState {
 public:
  /// State of the empty base.
  CostState(CostKind kind, const Multiset& set);

  CostState extended(Int radix) const;

  CostKind kind() const noexcept { return kind_; }
  Int product() const noexcept { return product_; }
  std::size_t depth() const noexcept { return depth_; }

  Int cost() const noexcept;
  Int partial() const noexcept;
  Int heuristic() const noexcept;
  Int alpha() const noexcept { return partial() + heuristic(); }

  /// s_k and c_k of the current msd position.
  Int msd_sum() const noexcept { return msd_sum_; }
  Int msd_carry() const noexcept { return msd_carry_; }

 private:
  CostState() = default;
  void refresh();

  struct Quotient {
    Int value;
    Int count;
  };

  CostKind kind_ = CostKind::SumDigits;
  std::vector<Quotient> quotients_;  // only entries with value > 0
  Int product_ = 1;
  std::size_t depth_ = 0;
  Int fixed_ = 0;       // cost of positions 0..k-1 under kind_
  Int msd_sum_ = 0;     // s_k
  Int msd_carry_ = 0;   // c_k
  Int nonzero_ = 0;     // |{x in S : x >= prod B}|
};

}  // namespace pbbase
