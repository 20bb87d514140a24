#include <doctest.h>

#include <cmath>
#include <map>

#include "pbbase/hash_priority_queue.hpp"
#include "pbbase/search.hpp"
#include "support.hpp"

using namespace pbbase;

namespace {

const Multiset kIntro{16, 30, 54, 60};
const Multiset kFig{1, 3, 4, 8, 18, 18};
const Multiset kPsi{2, 2, 2, 2, 5, 18};

SearchConfig config(CostKind kind, Algorithm algo, Int limit, bool primes) {
  SearchConfig c;
  c.kind = kind;
  c.algorithm = algo;
  c.max_elem = limit;
  c.primes_only = primes;
  return c;
}

}  // namespace

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("dfs") == Algorithm::DfsHP);
  CHECK(parse_algorithm("bnb") == Algorithm::BnB);
  CHECK(parse_algorithm("hashbnb") == Algorithm::HashBnB);
  CHECK(parse_algorithm("brute") == Algorithm::Brute);
  CHECK_THROWS(parse_algorithm("astar"));
}

TEST_CASE("extenders and initial base") {
  SearchConfig c = config(CostKind::SumDigits, Algorithm::HashBnB, 17, true);
  CHECK(extenders(Base{}, kIntro, c) == std::vector<Int>{2, 3, 5, 7, 11, 13, 17});
  CHECK(extenders(Base{3, 5}, kIntro, c) == std::vector<Int>{2, 3});
  CHECK(extenders(Base{2, 2, 3, 5}, kIntro, c).empty());
  c.primes_only = false;
  CHECK(extenders(Base{3, 5}, kIntro, c) == std::vector<Int>{2, 3, 4});
  CHECK(initial_best(kIntro) == Base{2, 2, 2, 2, 2});
  CHECK(initial_best(Multiset{1}) == Base{});
  CHECK(initial_best(Multiset{18}) == Base{2, 2, 2, 2});
  CHECK(primes_up_to(20) == std::vector<Int>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_up_to(1).empty());
}

TEST_CASE("worked optima") {
  for (Algorithm a : {Algorithm::DfsHP, Algorithm::BnB, Algorithm::HashBnB, Algorithm::Brute}) {
    CAPTURE(to_string(a));
    CHECK(find_base(kIntro, config(CostKind::SumDigits, a, 60, false)).best_cost == 9);
    CHECK(find_base(kIntro, config(CostKind::SumDigits, a, 60, true)).best_cost == 9);
    const auto one = find_base(Multiset{1}, config(CostKind::SumCarry, a, 10, false));
    CHECK(one.best_base == Base{});
    CHECK(one.best_cost == 1);
    CHECK(find_base(kFig, config(CostKind::SumCarry, a, 18, true)).best_cost == 11);
    CHECK(find_base(kFig, config(CostKind::NumComp, a, 18, false)).best_cost == 10);
  }
  const auto r = brute_force(kPsi, config(CostKind::SumCarry, Algorithm::Brute, 18, false));
  CHECK(r.best_cost == 8);
  CHECK(sum_carry(kPsi, Base{2, 9}) == 8);
}

TEST_CASE("guards and optimality flags") {
  CHECK_THROWS_AS(brute_force(Multiset{10001}, config(CostKind::SumDigits, Algorithm::Brute, 10, true)), InputTooLarge);
  CHECK_THROWS_AS(count_bases(Multiset{10001}), InputTooLarge);
  CHECK(hash_bnb(kIntro, config(CostKind::SumDigits, Algorithm::HashBnB, 60, true)).optimal_guaranteed);
  CHECK_FALSE(hash_bnb(kFig, config(CostKind::SumCarry, Algorithm::HashBnB, 60, true)).optimal_guaranteed);
  CHECK(branch_and_bound(kFig, config(CostKind::SumCarry, Algorithm::BnB, 60, true)).optimal_guaranteed);
}

TEST_CASE("timeout returns the best base so far") {
  SearchConfig c = config(CostKind::SumCarry, Algorithm::BnB, 100000, false);
  c.timeout = std::chrono::duration<double>(0);
  const Multiset big{1234567, 7654321, 99991, 3};
  const auto r = find_base(big, c);
  CHECK(r.timed_out);
  CHECK_FALSE(r.optimal_guaranteed);
  CHECK(r.best_cost == sum_carry(big, r.best_base));
}

TEST_CASE("count_bases") {
  CHECK(count_bases(Multiset{1}) == 1);
  // <>, <2>, <3>, <4>, <2,2>
  CHECK(count_bases(Multiset{4}) == 5);
  Int n = 0;
  support::for_each_base(60, 60, false, [&](const Base&) { ++n; });
  CHECK(count_bases(Multiset{60}) == static_cast<std::uint64_t>(n));
  CHECK(static_cast<double>(count_bases(Multiset{60})) <= std::pow(60.0, 2.73));
}

TEST_CASE("property: all algorithms match the exhaustive oracle") {
  support::SplitMix64 rng(31);
  for (int i = 0; i < 120; ++i) {
    const Multiset s = support::random_multiset(rng, 6, 200);
    for (CostKind k : {CostKind::SumDigits, CostKind::SumCarry, CostKind::NumComp}) {
      for (bool primes : {true, false}) {
        const Int expected = support::oracle_optimum(k, s, 200, primes);
        CAPTURE(s.to_string());
        CAPTURE(to_string(k));
        CAPTURE(primes);
        for (Algorithm a : {Algorithm::DfsHP, Algorithm::BnB, Algorithm::Brute}) {
          const auto r = find_base(s, config(k, a, 200, primes));
          REQUIRE(r.best_cost == expected);
          REQUIRE(cost(k, s, r.best_base) == r.best_cost);
        }
        const auto h = hash_bnb(s, config(k, Algorithm::HashBnB, 200, primes));
        REQUIRE(cost(k, s, h.best_base) == h.best_cost);
        if (k == CostKind::SumDigits) REQUIRE(h.best_cost == expected);
        else REQUIRE(h.best_cost >= expected);
      }
    }
  }
}

TEST_CASE("property: equal-product bases keep their cost order under extension") {
  support::SplitMix64 rng(32);
  int checked = 0;
  for (int i = 0; i < 4000 && checked < 2000; ++i) {
    const Multiset s = support::random_multiset(rng, 6, 2000);
    const Base b1 = support::random_base(rng, s.max(), 4, 8);
    if (b1.size() < 2) continue;
    // a permutation has the same product
    std::vector<Int> r(b1.radices().begin(), b1.radices().end());
    std::swap(r[0], r[static_cast<std::size_t>(rng.uniform(1, static_cast<Int>(r.size()) - 1))]);
    Base lo = b1, hi{r};
    if (cost_alpha(CostKind::SumDigits, s, hi) < cost_alpha(CostKind::SumDigits, s, lo)) std::swap(lo, hi);
    Base c1 = lo, c2 = hi;
    for (int t = 0; t < 3; ++t) {
      const Int p = rng.uniform(2, 7);
      if (c1.product() * p > s.max()) break;
      c1 = c1.extended(p);
      c2 = c2.extended(p);
      REQUIRE(sum_digits(s, c1) <= sum_digits(s, c2));
    }
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("hash priority queue: examples") {
  const Multiset s{16, 30, 54, 60};
  auto node = [&](Base b) {
    CostState st(CostKind::SumDigits, s);
    for (Int r : b.radices()) st = st.extended(r);
    return SearchNode(b, st);
  };
  HashPriorityQueue q;
  CHECK(q.empty());
  CHECK(q.push(node(Base{2, 3})) == HashPriorityQueue::PushOutcome::Inserted);
  const Int a23 = node(Base{2, 3}).alpha(), a32 = node(Base{3, 2}).alpha();
  const auto second = q.push(node(Base{3, 2}));
  CHECK(q.size() == 1);
  if (a32 < a23) {
    CHECK(second == HashPriorityQueue::PushOutcome::Replaced);
    CHECK(q.peek().base() == Base{3, 2});
  } else {
    CHECK(second == HashPriorityQueue::PushOutcome::Dropped);
    CHECK(q.peek().base() == Base{2, 3});
  }
  CHECK(q.push(node(Base{5})) == HashPriorityQueue::PushOutcome::Inserted);
  CHECK(q.size() == 2);
  CHECK(q.resident_alpha(6) == std::min(a23, a32));
  CHECK_FALSE(q.resident_alpha(7).has_value());
  const auto first = q.pop_min();
  const auto last = q.pop_min();
  CHECK_FALSE(NodeBefore{}(last, first));
  CHECK(q.empty());
}

TEST_CASE("property: hash priority queue discipline") {
  support::SplitMix64 rng(33);
  for (int round = 0; round < 200; ++round) {
    const Multiset s = support::random_multiset(rng, 6, 500);
    HashPriorityQueue q;
    std::map<Int, Int> best_alpha;  // model: live min alpha per product
    for (int op = 0; op < 40; ++op) {
      if (!q.empty() && rng.uniform(0, 3) == 0) {
        const SearchNode n = q.pop_min();
        for (const auto& [p, a] : best_alpha) REQUIRE(a >= n.alpha());
        REQUIRE(best_alpha.at(n.product()) == n.alpha());
        best_alpha.erase(n.product());
        continue;
      }
      const Base b = support::random_base(rng, s.max(), 4, 6);
      CostState st(CostKind::SumDigits, s);
      for (Int r : b.radices()) st = st.extended(r);
      const SearchNode n(b, st);
      const auto it = best_alpha.find(n.product());
      const auto outcome = q.push(n);
      if (it == best_alpha.end()) {
        REQUIRE(outcome == HashPriorityQueue::PushOutcome::Inserted);
        best_alpha[n.product()] = n.alpha();
      } else if (it->second <= n.alpha()) {
        REQUIRE(outcome == HashPriorityQueue::PushOutcome::Dropped);
      } else {
        REQUIRE(outcome == HashPriorityQueue::PushOutcome::Replaced);
        it->second = n.alpha();
      }
      REQUIRE(q.size() == best_alpha.size());
      for (const auto& [p, a] : best_alpha) REQUIRE(q.resident_alpha(p) == a);
    }
  }
}
