#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace pbbase {

/// A Boolean literal or one of the constants TRUE/FALSE.
///
/// Packed as 2*var + negated for variables (var >= 1); codes 0 and 1 are
/// FALSE and TRUE, so negation is always `code ^ 1`.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit constant(bool value) { return Lit(value ? 1u : 0u); }
  static constexpr Lit True() { return Lit(1u); }
  static constexpr Lit False() { return Lit(0u); }
  static constexpr Lit positive(std::uint32_t var) { return Lit(var << 1); }
  static constexpr Lit negative(std::uint32_t var) { return Lit((var << 1) | 1u); }
  static constexpr Lit make(std::uint32_t var, bool negated) { return Lit((var << 1) | (negated ? 1u : 0u)); }
  /// From a DIMACS integer (non-zero).
  static constexpr Lit from_dimacs(std::int64_t v) {
    return v > 0 ? positive(static_cast<std::uint32_t>(v)) : negative(static_cast<std::uint32_t>(-v));
  }

  constexpr bool is_constant() const { return code_ < 2; }
  constexpr bool is_true() const { return code_ == 1; }
  constexpr bool is_false() const { return code_ == 0; }
  constexpr std::uint32_t var() const { return code_ >> 1; }
  constexpr bool negated() const { return code_ & 1u; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr std::int64_t to_dimacs() const {
    return negated() ? -static_cast<std::int64_t>(var()) : static_cast<std::int64_t>(var());
  }

  constexpr Lit operator~() const { return Lit(code_ ^ 1u); }
  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  constexpr explicit Lit(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// Ordered literals y_1 >= y_2 >= ... of a unary number.
using UnaryBus = std::vector<Lit>;

using Clause = std::vector<Lit>;

class VariableBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Cnf {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::uint64_t comparators = 0;

  bool has_empty_clause() const;
};

/// Fresh-variable allocator and clause sink with constant folding.
class CnfBuilder {
 public:
  static constexpr std::uint64_t kMaxVars = (std::uint64_t{1} << 31) - 1;

  CnfBuilder() = default;
  /// Reserves ids 1..n for problem variables.
  explicit CnfBuilder(std::uint32_t reserved_vars);

  Lit fresh();
  void reserve_vars(std::uint32_t n);

  /// Drops clauses satisfied by a TRUE literal or a complementary pair,
  /// removes FALSE and repeated literals. An all-FALSE clause is kept empty.
  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }

  /// Fresh g with g <-> (a & b), folded when an input is constant.
  Lit make_and(Lit a, Lit b);
  /// Fresh g with g <-> OR(lits), folded when possible.
  Lit make_or(std::span<const Lit> lits);
  Lit make_or(Lit a, Lit b) {
    const Lit l[2] = {a, b};
    return make_or(l);
  }

  void count_comparator() noexcept { ++cnf_.comparators; }

  std::uint32_t num_vars() const noexcept { return cnf_.num_vars; }
  std::size_t num_clauses() const noexcept { return cnf_.clauses.size(); }
  std::uint64_t comparators() const noexcept { return cnf_.comparators; }
  const Cnf& cnf() const noexcept { return cnf_; }
  Cnf take() && { return std::move(cnf_); }

 private:
  Cnf cnf_;
  Clause scratch_;
};

}  // namespace pbbase
