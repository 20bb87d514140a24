#include "pbbase/cnf_builder.hpp"

#include <algorithm>

namespace pbbase {

bool Cnf::has_empty_clause() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.empty(); });
}

CnfBuilder::CnfBuilder(std::uint32_t reserved_vars) { reserve_vars(reserved_vars); }

void CnfBuilder::reserve_vars(std::uint32_t n) {
  if (n > kMaxVars) throw VariableBudgetExceeded("variable budget of 2^31-1 exceeded");
  cnf_.num_vars = std::max(cnf_.num_vars, n);
}

Lit CnfBuilder::fresh() {
  if (cnf_.num_vars >= kMaxVars) throw VariableBudgetExceeded("variable budget of 2^31-1 exceeded");
  return Lit::positive(++cnf_.num_vars);
}

void CnfBuilder::add_clause(std::span<const Lit> lits) {
  scratch_.clear();
  for (Lit l : lits) {
    if (l.is_true()) return;
    if (l.is_false()) continue;
    scratch_.push_back(l);
  }
  std::sort(scratch_.begin(), scratch_.end());
  scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
  // complementary literals are adjacent after sorting by code
  for (std::size_t i = 1; i < scratch_.size(); ++i)
    if (scratch_[i] == ~scratch_[i - 1]) return;
  cnf_.clauses.push_back(scratch_);
}

Lit CnfBuilder::make_and(Lit a, Lit b) {
  if (a.is_false() || b.is_false()) return Lit::False();
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a == b) return a;
  if (a == ~b) return Lit::False();
  const Lit g = fresh();
  add_clause({~g, a});
  add_clause({~g, b});
  add_clause({g, ~a, ~b});
  return g;
}

Lit CnfBuilder::make_or(std::span<const Lit> lits) {
  Clause live;
  for (Lit l : lits) {
    if (l.is_true()) return Lit::True();
    if (l.is_false()) continue;
    live.push_back(l);
  }
  std::sort(live.begin(), live.end());
  live.erase(std::unique(live.begin(), live.end()), live.end());
  for (std::size_t i = 1; i < live.size(); ++i)
    if (live[i] == ~live[i - 1]) return Lit::True();
  if (live.empty()) return Lit::False();
  if (live.size() == 1) return live.front();
  const Lit g = fresh();
  for (Lit l : live) add_clause({g, ~l});
  live.push_back(~g);
  add_clause(live);
  return g;
}

}  // namespace pbbase
