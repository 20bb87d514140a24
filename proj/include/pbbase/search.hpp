#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pbbase/cost.hpp"
#include "pbbase/mixed_radix.hpp"

namespace pbbase {

enum class Algorithm { DfsHP, BnB, HashBnB, Brute };

std::string_view to_string(Algorithm algo) noexcept;
/// Accepts "dfs", "bnb", "hashbnb", "brute".
Algorithm parse_algorithm(std::string_view text);

struct SearchConfig {
  CostKind kind = CostKind::SumDigits;
  Int max_elem = 10000;  // l: upper bound on any radix
  bool primes_only = true;
  Algorithm algorithm = Algorithm::HashBnB;
  std::optional<std::chrono::duration<double>> timeout;
};

/// Brute force and base counting refuse multisets above this maximum.
inline constexpr Int kBruteForceLimit = 10000;

class InputTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node of the base tree together with its cached cost evaluation.
class SearchNode {
 public:
  SearchNode(Base base, CostState state) : base_(std::move(base)), state_(std::move(state)) {}

  static SearchNode root(CostKind kind, const Multiset& set) { return {Base{}, CostState(kind, set)}; }
  SearchNode extended(Int radix) const { return {base_.extended(radix), state_.extended(radix)}; }

  const Base& base() const noexcept { return base_; }
  const CostState& state() const noexcept { return state_; }
  Int product() const noexcept { return state_.product(); }
  Int cost() const noexcept { return state_.cost(); }
  Int alpha() const noexcept { return state_.alpha(); }

 private:
  Base base_;
  CostState state_;
};

/// Priority order of the best-first searches: cost_alpha, then smaller
/// product, then shorter base, then lexicographic radices.
struct NodeBefore {
  bool operator()(const SearchNode& a, const SearchNode& b) const;
};

struct SearchResult {
  Base best_base;
  Int best_cost = 0;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t nodes_pruned = 0;
  std::chrono::duration<double> elapsed{0};
  bool optimal_guaranteed = false;
  bool timed_out = false;
};

/// Ascending candidate radices for extending the bases of a fixed multiset.
/// Primes are sieved once, up to min(l, max(S)).
class Extenders {
 public:
  Extenders(const Multiset& set, const SearchConfig& cfg);

  /// Every p in the candidate set with 2 <= p <= l and product * p <= max(S).
  std::vector<Int> operator()(Int product) const;

  template <class Fn>
  void for_each(Int product, Fn&& fn) const {
    const Int bound = max_ / product;
    if (primes_only_) {
      for (Int p : primes_) {
        if (p > bound) break;
        fn(p);
      }
    } else {
      const Int last = std::min(bound, limit_);
      for (Int p = 2; p <= last; ++p) fn(p);
    }
  }

 private:
  Int max_;
  Int limit_;
  bool primes_only_;
  std::vector<Int> primes_;
};

std::vector<Int> extenders(const Base& base, const Multiset& set, const SearchConfig& cfg);

/// Primes up to n, ascending.
std::vector<Int> primes_up_to(Int n);

/// <2,...,2> of length floor(log2 max(S)).
Base initial_best(const Multiset& set);

SearchResult dfs_hp(const Multiset& set, const SearchConfig& cfg);
SearchResult branch_and_bound(const Multiset& set, const SearchConfig& cfg);
SearchResult hash_bnb(const Multiset& set, const SearchConfig& cfg);
SearchResult brute_force(const Multiset& set, const SearchConfig& cfg);

/// Dispatches on cfg.algorithm.
SearchResult find_base(const Multiset& set, const SearchConfig& cfg);

/// |Base(S)|: all non-redundant bases over all integers, the empty base included.
std::uint64_t count_bases(const Multiset& set);

}  // namespace pbbase
