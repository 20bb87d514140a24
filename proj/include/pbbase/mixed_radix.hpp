#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pbbase {

using Int = std::int64_t;

/// Largest element accepted anywhere in the library. Keeps every product of
/// two in-range values representable in 128 bits and every weight that can
/// matter (<= max element) representable in 64.
inline constexpr Int kMaxValue = Int{1} << 62;

/// Multiplies with saturation at INT64_MAX. Weights past max(S) only ever
/// feed div() calls where the exact magnitude is irrelevant.
Int saturating_mul(Int a, Int b) noexcept;

/// A finite mixed-radix base <r_0, ..., r_{k-1}>, every radix >= 2.
/// The empty base is the unary base: every number has a single digit.
class Base {
 public:
  Base() = default;
  explicit Base(std::vector<Int> radices);
  Base(std::initializer_list<Int> radices) : Base(std::vector<Int>(radices)) {}

  std::span<const Int> radices() const noexcept { return radices_; }
  std::size_t size() const noexcept { return radices_.size(); }
  bool empty() const noexcept { return radices_.empty(); }
  Int operator[](std::size_t i) const { return radices_[i]; }

  /// Product of the radices (1 for the empty base), saturating.
  Int product() const noexcept { return product_; }

  Base extended(Int radix) const;
  bool is_prefix_of(const Base& other) const noexcept;

  /// "<2,3,3>"; "<>" for the unary base.
  std::string to_string() const;
  /// "2,3,3"; "" for the unary base. Inverse of parse_base.
  std::string to_csv() const;

  friend bool operator==(const Base&, const Base&) = default;
  friend std::strong_ordering operator<=>(const Base& a, const Base& b) {
    return a.radices_ <=> b.radices_;
  }

 private:
  std::vector<Int> radices_;
  Int product_ = 1;
};

/// Parses "2,3,3" (whitespace tolerated, empty string = unary base).
Base parse_base(const std::string& text);

/// <w_0, ..., w_k> with w_0 = 1 and w_{i+1} = w_i * r_i (saturating).
std::vector<Int> weights(const Base& base);

/// k+1 digits; the last (most significant) digit is unbounded.
using DigitVector = std::vector<Int>;

DigitVector digits_of(Int value, const Base& base);
Int value_of(std::span<const Int> digits, const Base& base);

/// Non-empty sorted multiset of positive integers. Duplicates are stored
/// explicitly; distinct() exposes the (value, multiplicity) view that the
/// incremental cost evaluation runs over.
class Multiset {
 public:
  struct Entry {
    Int value;
    Int count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit Multiset(std::vector<Int> elements);
  Multiset(std::initializer_list<Int> elements) : Multiset(std::vector<Int>(elements)) {}

  std::span<const Int> elements() const noexcept { return elements_; }
  std::span<const Entry> distinct() const noexcept { return distinct_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t distinct_count() const noexcept { return distinct_.size(); }
  Int max() const noexcept { return elements_.back(); }
  Int sum() const noexcept { return sum_; }

  std::string to_string() const;

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Int> elements_;
  std::vector<Entry> distinct_;
  Int sum_ = 0;
};

/// Parses "16,30,54,60".
Multiset parse_multiset(const std::string& text);

/// n x (k+1) digit matrix; row i is digits_of(S(i), base).
struct DigitMatrix {
  Base base;
  std::vector<DigitVector> rows;

  std::size_t columns() const noexcept { return base.size() + 1; }
  std::vector<Int> column_sums() const;
  /// Sum of the most significant digit column.
  Int msd_sum() const;
};

DigitMatrix digit_matrix(const Multiset& set, const Base& base);

/// True iff product(base) > max(S), i.e. the msd column is all zeros.
bool is_redundant(const Multiset& set, const Base& base);

/// Replaces radices p and p+1 by their product.
Base merge_adjacent(const Base& base, std::size_t position);

}  // namespace pbbase
