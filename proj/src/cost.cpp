#include "pbbase/cost.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace pbbase {

std::string_view to_string(CostKind kind) noexcept {
  switch (kind) {
    case CostKind::SumDigits: return "sum_digits";
    case CostKind::SumCarry: return "sum_carry";
    case CostKind::NumComp: return "num_comp";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view text) {
  if (text == "digits" || text == "sum_digits") return CostKind::SumDigits;
  if (text == "carry" || text == "sum_carry") return CostKind::SumCarry;
  if (text == "comp" || text == "num_comp") return CostKind::NumComp;
  throw std::invalid_argument("unknown cost kind '" + std::string(text) + "'");
}

std::vector<Int> CostBreakdown::network_sizes() const {
  std::vector<Int> n(sums.size());
  for (std::size_t j = 0; j < n.size(); ++j) n[j] = network_size(j);
  return n;
}

CostBreakdown breakdown(const Multiset& set, const Base& base) {
  CostBreakdown b;
  b.sums = digit_matrix(set, base).column_sums();
  b.carries.assign(b.sums.size(), 0);
  for (std::size_t j = 0; j < base.size(); ++j) b.carries[j + 1] = (b.sums[j] + b.carries[j]) / base[j];
  return b;
}

Int comparator_count(Int n) {
  static constexpr std::array<Int, 9> kOptimal{0, 0, 1, 3, 5, 9, 12, 16, 19};
  if (n < 0) throw std::invalid_argument("comparator_count: negative size");
  if (n <= 8) return kOptimal[static_cast<std::size_t>(n)];
  // ceil(log2 n) for n > 1
  const Int lg = 64 - std::countl_zero(static_cast<std::uint64_t>(n - 1));
  return n * lg * (lg - 1) / 4 + n - 1;
}

Int sum_digits(const Multiset& set, const Base& base) {
  Int total = 0;
  for (Int s : breakdown(set, base).sums) total += s;
  return total;
}

Int sum_carry(const Multiset& set, const Base& base) {
  const auto b = breakdown(set, base);
  Int total = 0;
  for (std::size_t j = 0; j < b.sums.size(); ++j) total += b.network_size(j);
  return total;
}

Int num_comp(const Multiset& set, const Base& base) {
  const auto b = breakdown(set, base);
  Int total = 0;
  for (std::size_t j = 0; j < b.sums.size(); ++j) total += comparator_count(b.network_size(j));
  return total;
}

Int cost(CostKind kind, const Multiset& set, const Base& base) {
  switch (kind) {
    case CostKind::SumDigits: return sum_digits(set, base);
    case CostKind::SumCarry: return sum_carry(set, base);
    case CostKind::NumComp: return num_comp(set, base);
  }
  throw std::logic_error("bad cost kind");
}

Int partial_cost(CostKind kind, const Multiset& set, const Base& base) {
  const auto b = breakdown(set, base);
  const std::size_t k = base.size();
  if (kind == CostKind::NumComp) return cost(kind, set, base) - comparator_count(b.network_size(k));
  return cost(kind, set, base) - b.sums[k];
}

Int heuristic(CostKind kind, const Multiset& set, const Base& base) {
  if (kind == CostKind::NumComp) return 0;
  Int n = 0;
  for (Int x : set.elements())
    if (x >= base.product()) ++n;
  return n;
}

Int cost_alpha(CostKind kind, const Multiset& set, const Base& base) {
  return partial_cost(kind, set, base) + heuristic(kind, set, base);
}

// ---------------------------------------------------------------------------

CostState::CostState(CostKind kind, const Multiset& set) : kind_(kind) {
  quotients_.reserve(set.distinct_count());
  for (const auto& e : set.distinct()) quotients_.push_back({e.value, e.count});
  refresh();
}

void CostState::refresh() {
  msd_sum_ = 0;
  nonzero_ = 0;
  for (const auto& q : quotients_) {
    msd_sum_ += q.value * q.count;
    nonzero_ += q.count;
  }
}

CostState CostState::extended(Int radix) const {
  CostState next;
  next.kind_ = kind_;
  next.product_ = saturating_mul(product_, radix);
  next.depth_ = depth_ + 1;
  next.quotients_.reserve(quotients_.size());

  Int digit_sum = 0;  // s_k under the extended base
  for (const auto& q : quotients_) {
    digit_sum += (q.value % radix) * q.count;
    const Int up = q.value / radix;
    if (up > 0) next.quotients_.push_back({up, q.count});
  }
  const Int inputs = digit_sum + msd_carry_;
  switch (kind_) {
    case CostKind::SumDigits: next.fixed_ = fixed_ + digit_sum; break;
    case CostKind::SumCarry: next.fixed_ = fixed_ + inputs; break;
    case CostKind::NumComp: next.fixed_ = fixed_ + comparator_count(inputs); break;
  }
  next.msd_carry_ = inputs / radix;
  next.refresh();
  return next;
}

Int CostState::cost() const noexcept {
  switch (kind_) {
    case CostKind::SumDigits: return fixed_ + msd_sum_;
    case CostKind::SumCarry: return fixed_ + msd_sum_ + msd_carry_;
    case CostKind::NumComp: return fixed_ + comparator_count(msd_sum_ + msd_carry_);
  }
  return 0;
}

Int CostState::partial() const noexcept {
  switch (kind_) {
    case CostKind::SumDigits: return fixed_;
    case CostKind::SumCarry: return fixed_ + msd_carry_;
    case CostKind::NumComp: return fixed_;
  }
  return 0;
}

Int CostState::heuristic() const noexcept { return kind_ == CostKind::NumComp ? 0 : nonzero_; }

}  // namespace pbbase
