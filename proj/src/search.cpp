#include "pbbase/search.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <queue>
#include <unordered_set>

#include "pbbase/hash_priority_queue.hpp"

namespace pbbase {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::DfsHP: return "dfs";
    case Algorithm::BnB: return "bnb";
    case Algorithm::HashBnB: return "hashbnb";
    case Algorithm::Brute: return "brute";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "dfs" || text == "dfshp") return Algorithm::DfsHP;
  if (text == "bnb") return Algorithm::BnB;
  if (text == "hashbnb") return Algorithm::HashBnB;
  if (text == "brute") return Algorithm::Brute;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

bool NodeBefore::operator()(const SearchNode& a, const SearchNode& b) const {
  if (a.alpha() != b.alpha()) return a.alpha() < b.alpha();
  if (a.product() != b.product()) return a.product() < b.product();
  if (a.base().size() != b.base().size()) return a.base().size() < b.base().size();
  return a.base() < b.base();
}

// ---------------------------------------------------------------------------
// primes

namespace {

constexpr Int kSieveLimit = Int{1} << 27;

std::mutex g_prime_mutex;
std::vector<Int> g_primes;
Int g_sieved_to = 1;

}  // namespace

std::vector<Int> primes_up_to(Int n) {
  if (n > kSieveLimit)
    throw std::invalid_argument("prime candidates above 2^27 are not supported; lower --max-elem");
  std::lock_guard lock(g_prime_mutex);
  if (n > g_sieved_to) {
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    std::vector<Int> primes;
    for (Int i = 2; i <= n; ++i) {
      if (composite[static_cast<std::size_t>(i)]) continue;
      primes.push_back(i);
      for (Int j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    g_primes = std::move(primes);
    g_sieved_to = n;
  }
  const auto end = std::upper_bound(g_primes.begin(), g_primes.end(), n);
  return {g_primes.begin(), end};
}

// ---------------------------------------------------------------------------

Extenders::Extenders(const Multiset& set, const SearchConfig& cfg)
    : max_(set.max()), limit_(std::min(cfg.max_elem, set.max())), primes_only_(cfg.primes_only) {
  if (cfg.max_elem < 2) throw std::invalid_argument("max_elem must be >= 2");
  if (primes_only_) primes_ = primes_up_to(limit_);
}

std::vector<Int> Extenders::operator()(Int product) const {
  std::vector<Int> out;
  for_each(product, [&](Int p) { out.push_back(p); });
  return out;
}

std::vector<Int> extenders(const Base& base, const Multiset& set, const SearchConfig& cfg) {
  return Extenders(set, cfg)(base.product());
}

Base initial_best(const Multiset& set) {
  const auto lg = std::bit_width(static_cast<std::uint64_t>(set.max())) - 1;
  return Base(std::vector<Int>(lg, 2));
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(const std::optional<std::chrono::duration<double>>& timeout) {
    if (timeout)
      at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(*timeout);
  }
  bool expired() const { return at_ && Clock::now() >= *at_; }

 private:
  std::optional<Clock::time_point> at_;
};

/// Shared bookkeeping: best base so far and counters.
class Incumbent {
 public:
  Incumbent(const Multiset& set, const SearchConfig& cfg)
      : start_(Clock::now()), deadline_(cfg.timeout) {
    result_.best_base = initial_best(set);
    result_.best_cost = pbbase::cost(cfg.kind, set, result_.best_base);
  }

  Int cost() const noexcept { return result_.best_cost; }

  void offer(const SearchNode& node) {
    if (node.cost() < result_.best_cost) {
      result_.best_cost = node.cost();
      result_.best_base = node.base();
    }
  }

  /// Counts an expansion; false once the deadline passed.
  bool expand() {
    if (result_.timed_out) return false;
    if (deadline_.expired()) {
      result_.timed_out = true;
      return false;
    }
    ++result_.nodes_expanded;
    return true;
  }
  bool timed_out() const noexcept { return result_.timed_out; }
  void prune() noexcept { ++result_.nodes_pruned; }

  SearchResult finish(bool exact) {
    result_.elapsed = Clock::now() - start_;
    result_.optimal_guaranteed = exact && !result_.timed_out;
    return std::move(result_);
  }

 private:
  Clock::time_point start_;
  Deadline deadline_;
  SearchResult result_;
};

void dfs_visit(const SearchNode& node, const Extenders& ext, Incumbent& best) {
  if (!best.expand()) return;
  ext.for_each(node.product(), [&](Int p) {
    if (best.timed_out()) return;
    SearchNode child = node.extended(p);
    if (child.alpha() > best.cost()) {
      best.prune();
      return;
    }
    best.offer(child);
    dfs_visit(child, ext, best);
  });
}

void brute_visit(const SearchNode& node, const Extenders& ext, Incumbent& best) {
  if (!best.expand()) return;
  best.offer(node);
  ext.for_each(node.product(), [&](Int p) {
    if (best.timed_out()) return;
    brute_visit(node.extended(p), ext, best);
  });
}

}  // namespace

SearchResult dfs_hp(const Multiset& set, const SearchConfig& cfg) {
  const Extenders ext(set, cfg);
  Incumbent best(set, cfg);
  const auto root = SearchNode::root(cfg.kind, set);
  best.offer(root);
  dfs_visit(root, ext, best);
  return best.finish(true);
}

SearchResult branch_and_bound(const Multiset& set, const SearchConfig& cfg) {
  const Extenders ext(set, cfg);
  Incumbent best(set, cfg);
  auto after = [](const SearchNode& a, const SearchNode& b) { return NodeBefore{}(b, a); };
  std::priority_queue<SearchNode, std::vector<SearchNode>, decltype(after)> queue(after);

  auto root = SearchNode::root(cfg.kind, set);
  best.offer(root);
  queue.push(std::move(root));
  while (!queue.empty() && queue.top().alpha() < best.cost()) {
    if (!best.expand()) break;
    const SearchNode node = queue.top();
    queue.pop();
    ext.for_each(node.product(), [&](Int p) {
      SearchNode child = node.extended(p);
      if (child.alpha() <= best.cost()) {
        best.offer(child);
        queue.push(std::move(child));
      } else {
        best.prune();
      }
    });
  }
  return best.finish(true);
}

SearchResult hash_bnb(const Multiset& set, const SearchConfig& cfg) {
  const Extenders ext(set, cfg);
  Incumbent best(set, cfg);
  HashPriorityQueue queue;
  // Products already popped: any later base with the same product is
  // dominated by the popped one.
  std::unordered_set<Int> expanded;

  auto root = SearchNode::root(cfg.kind, set);
  best.offer(root);
  queue.push(std::move(root));
  while (!queue.empty() && queue.peek().alpha() < best.cost()) {
    if (!best.expand()) break;
    const SearchNode node = queue.pop_min();
    expanded.insert(node.product());
    ext.for_each(node.product(), [&](Int p) {
      SearchNode child = node.extended(p);
      if (child.alpha() > best.cost()) {
        best.prune();
        return;
      }
      best.offer(child);
      if (expanded.contains(child.product()) ||
          queue.push(std::move(child)) == HashPriorityQueue::PushOutcome::Dropped)
        best.prune();
    });
  }
  return best.finish(cfg.kind == CostKind::SumDigits);
}

SearchResult brute_force(const Multiset& set, const SearchConfig& cfg) {
  if (set.max() > kBruteForceLimit)
    throw InputTooLarge("brute force needs max(S) <= " + std::to_string(kBruteForceLimit));
  const Extenders ext(set, cfg);
  Incumbent best(set, cfg);
  brute_visit(SearchNode::root(cfg.kind, set), ext, best);
  return best.finish(true);
}

SearchResult find_base(const Multiset& set, const SearchConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::DfsHP: return dfs_hp(set, cfg);
    case Algorithm::BnB: return branch_and_bound(set, cfg);
    case Algorithm::HashBnB: return hash_bnb(set, cfg);
    case Algorithm::Brute: return brute_force(set, cfg);
  }
  throw std::logic_error("bad algorithm");
}

namespace {

std::uint64_t count_from(Int product, Int max) {
  std::uint64_t n = 1;
  for (Int p = 2; p <= max / product; ++p) n += count_from(product * p, max);
  return n;
}

}  // namespace

std::uint64_t count_bases(const Multiset& set) {
  if (set.max() > kBruteForceLimit)
    throw InputTooLarge("count_bases needs max(S) <= " + std::to_string(kBruteForceLimit));
  return count_from(1, set.max());
}

}  // namespace pbbase
