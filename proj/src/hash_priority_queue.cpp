#include "pbbase/hash_priority_queue.hpp"

namespace pbbase {

HashPriorityQueue::PushOutcome HashPriorityQueue::push(SearchNode node) {
  const Int product = node.product();
  const Int alpha = node.alpha();
  auto it = resident_.find(product);
  PushOutcome outcome = PushOutcome::Inserted;
  if (it != resident_.end()) {
    if (it->second.alpha <= alpha) return PushOutcome::Dropped;
    outcome = PushOutcome::Replaced;
  }
  const std::uint64_t ticket = next_ticket_++;
  resident_[product] = Resident{alpha, ticket};
  heap_.push(Entry{std::move(node), ticket});
  return outcome;
}

void HashPriorityQueue::discard_stale() {
  while (!heap_.empty()) {
    const Entry& top = heap_.top();
    auto it = resident_.find(top.node.product());
    if (it != resident_.end() && it->second.ticket == top.ticket) return;
    heap_.pop();
  }
}

const SearchNode& HashPriorityQueue::peek() {
  discard_stale();
  return heap_.top().node;
}

SearchNode HashPriorityQueue::pop_min() {
  discard_stale();
  SearchNode node = heap_.top().node;
  heap_.pop();
  resident_.erase(node.product());
  return node;
}

std::optional<Int> HashPriorityQueue::resident_alpha(Int product) const {
  auto it = resident_.find(product);
  if (it == resident_.end()) return std::nullopt;
  return it->second.alpha;
}

}  // namespace pbbase
