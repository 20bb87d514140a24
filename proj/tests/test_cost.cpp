#include <doctest.h>

#include "pbbase/cost.hpp"
#include "support.hpp"

using namespace pbbase;

namespace {
const Multiset kFig{1, 3, 4, 8, 18, 18};
const Multiset kPsi{2, 2, 2, 2, 5, 18};
const Multiset kIntro{16, 30, 54, 60};
constexpr CostKind kKinds[] = {CostKind::SumDigits, CostKind::SumCarry, CostKind::NumComp};
}  // namespace

TEST_CASE("cost kind names") {
  CHECK(parse_cost_kind("digits") == CostKind::SumDigits);
  CHECK(parse_cost_kind("carry") == CostKind::SumCarry);
  CHECK(parse_cost_kind("comp") == CostKind::NumComp);
  CHECK(parse_cost_kind("sum_carry") == CostKind::SumCarry);
  CHECK(to_string(CostKind::NumComp) == "num_comp");
  CHECK_THROWS(parse_cost_kind("bits"));
}

TEST_CASE("breakdown") {
  auto b = breakdown(kFig, Base{2, 3, 3});
  CHECK(b.sums == std::vector<Int>{2, 4, 1, 2});
  CHECK(b.carries == std::vector<Int>{0, 1, 1, 0});
  b = breakdown(kFig, Base{2, 2, 2, 2});
  CHECK(b.sums == std::vector<Int>{2, 3, 1, 1, 2});
  CHECK(b.carries == std::vector<Int>{0, 1, 2, 1, 1});
  b = breakdown(Multiset{9}, Base{});
  CHECK(b.sums == std::vector<Int>{9});
  CHECK(b.carries == std::vector<Int>{0});
  CHECK(breakdown(kPsi, Base{2, 3, 3}).network_sizes() == std::vector<Int>{1, 6, 2, 1});
}

TEST_CASE("comparator_count") {
  const Int table[] = {0, 0, 1, 3, 5, 9, 12, 16, 19};
  for (Int n = 0; n <= 8; ++n) CHECK(comparator_count(n) == table[n]);
  CHECK(comparator_count(16) == 63);
  CHECK(comparator_count(9) == 9 * 4 * 3 / 4 + 8);
  Int prev = 0;
  for (Int n = 0; n <= 10000; ++n) {
    const Int f = comparator_count(n);
    REQUIRE(f >= prev);
    REQUIRE(f == support::oracle_f(n));
    prev = f;
  }
}

TEST_CASE("sum_digits examples") {
  CHECK(sum_digits(kIntro, Base{2, 2, 2, 2, 2}) == 13);
  CHECK(sum_digits(kIntro, Base{3, 5, 2, 2}) == 9);
  CHECK(sum_digits(kIntro, Base{}) == 160);
  CHECK(sum_digits(kIntro, Base{10}) == 25);
  CHECK(sum_digits(kIntro, Base{3, 3, 3}) == 12);
}

TEST_CASE("sum_carry examples") {
  CHECK(sum_carry(kFig, Base{2, 3, 3}) == 11);
  CHECK(sum_carry(kFig, Base{2, 2, 2, 2}) == 14);
  CHECK(sum_carry(kPsi, Base{2, 9}) == 8);
  CHECK(sum_carry(kPsi, Base{2, 3, 3}) == 10);
}

TEST_CASE("num_comp examples") {
  CHECK(num_comp(kFig, Base{3, 2, 3}) == 10);
  CHECK(num_comp(kFig, Base{2, 3, 3}) == 12);
  CHECK(num_comp(kFig, Base{2, 2, 2, 2}) == 13);
}

TEST_CASE("partial cost and heuristic examples") {
  CHECK(partial_cost(CostKind::SumDigits, kIntro, Base{}) == 0);
  CHECK(partial_cost(CostKind::SumCarry, kFig, Base{2, 3, 3}) == 9);
  CHECK(partial_cost(CostKind::NumComp, kFig, Base{2, 3, 3}) == 11);
  CHECK(heuristic(CostKind::SumDigits, kIntro, Base{3, 5}) == 4);
  CHECK(heuristic(CostKind::SumCarry, kPsi, Base{2, 3, 3}) == 1);
  CHECK(heuristic(CostKind::NumComp, kFig, Base{2, 3, 3}) == 0);
  CHECK(cost_alpha(CostKind::SumDigits, kIntro, Base{3, 5}) ==
        partial_cost(CostKind::SumDigits, kIntro, Base{3, 5}) + 4);
  CHECK(cost_alpha(CostKind::SumCarry, kPsi, Base{2, 3, 3}) == partial_cost(CostKind::SumCarry, kPsi, Base{2, 3, 3}) + 1);
  CHECK(cost_alpha(CostKind::NumComp, kFig, Base{2, 3, 3}) == 11);
}

TEST_CASE("property: costs match the digit oracle and each other") {
  support::SplitMix64 rng(21);
  for (int i = 0; i < 3000; ++i) {
    const Multiset s = support::random_multiset(rng, 8, 5000);
    const Base b = support::random_base(rng, s.max() * 3, 7);
    for (CostKind k : kKinds) REQUIRE(cost(k, s, b) == support::oracle_cost(k, s, b));
    const auto br = breakdown(s, b);
    bool carries_zero = true;
    for (Int c : br.carries) carries_zero = carries_zero && c == 0;
    REQUIRE(sum_carry(s, b) >= sum_digits(s, b));
    REQUIRE((sum_carry(s, b) == sum_digits(s, b)) == carries_zero);
    Int per_element = 0;
    for (Int v : s.elements())
      for (Int d : digits_of(v, b)) per_element += d;
    REQUIRE(per_element == sum_digits(s, b));
  }
}

TEST_CASE("property: incremental state equals direct evaluation") {
  support::SplitMix64 rng(22);
  for (int i = 0; i < 1500; ++i) {
    const Multiset s = support::random_multiset(rng, 8, 100000);
    const CostKind k = kKinds[i % 3];
    CostState st(k, s);
    Base b;
    for (;;) {
      REQUIRE(st.cost() == cost(k, s, b));
      REQUIRE(st.partial() == partial_cost(k, s, b));
      REQUIRE(st.heuristic() == heuristic(k, s, b));
      REQUIRE(st.product() == b.product());
      const Int r = rng.uniform(2, 9);
      if (b.product() * r > s.max()) break;
      b = b.extended(r);
      st = st.extended(r);
    }
  }
}

TEST_CASE("property: inputs of fixed positions survive extension") {
  support::SplitMix64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const Multiset s = support::random_multiset(rng, 8, 200);
    const Base b = support::random_base(rng, s.max(), 5);
    const Base ext = b.extended(rng.uniform(2, 7));
    const auto x = breakdown(s, b), y = breakdown(s, ext);
    for (std::size_t j = 0; j < b.size(); ++j) REQUIRE(x.network_size(j) == y.network_size(j));
  }
}

TEST_CASE("property: admissibility chain") {
  support::SplitMix64 rng(24);
  for (int i = 0; i < 3000; ++i) {
    const Multiset s = support::random_multiset(rng, 6, 200);
    const Base b = support::random_base(rng, s.max(), 4);
    Base ext = b;
    const auto steps = rng.uniform(1, 3);
    for (Int t = 0; t < steps; ++t) {
      const Int r = rng.uniform(2, 7);
      if (ext.product() * r > s.max()) break;
      ext = ext.extended(r);
    }
    for (CostKind k : kKinds) {
      REQUIRE(cost(k, s, ext) >= cost_alpha(k, s, ext));
      REQUIRE(cost_alpha(k, s, ext) >= cost_alpha(k, s, b));
      REQUIRE(cost(k, s, b) >= cost_alpha(k, s, b));
    }
  }
}
