#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "pbbase/search.hpp"

namespace pbbase {

/// Min-queue of search nodes holding at most one node per base product.
///
/// push(B1) with a resident B2 of equal product keeps whichever has the
/// smaller cost_alpha; on a tie the resident stays. Replaced residents are
/// left in the heap as tombstones and skipped when they surface.
class HashPriorityQueue {
 public:
  enum class PushOutcome { Inserted, Dropped, Replaced };

  PushOutcome push(SearchNode node);

  bool empty() const noexcept { return resident_.empty(); }
  std::size_t size() const noexcept { return resident_.size(); }

  /// Minimal live node. Precondition: !empty().
  const SearchNode& peek();
  SearchNode pop_min();

  /// cost_alpha of the live node for a product, if any.
  std::optional<Int> resident_alpha(Int product) const;

 private:
  struct Entry {
    SearchNode node;
    std::uint64_t ticket;
  };
  struct EntryAfter {
    bool operator()(const Entry& a, const Entry& b) const { return NodeBefore{}(b.node, a.node); }
  };
  struct Resident {
    Int alpha;
    std::uint64_t ticket;
  };

  void discard_stale();

  std::priority_queue<Entry, std::vector<Entry>, EntryAfter> heap_;
  std::unordered_map<Int, Resident> resident_;
  std::uint64_t next_ticket_ = 0;
};

}  // namespace pbbase
