#include "pbbase/satcheck.hpp"

#include <string>

namespace pbbase {

namespace {

class Dpll {
 public:
  explicit Dpll(std::uint32_t num_vars) : value_(num_vars + 1, kUnset), watches_(2 * (num_vars + 1)) {}

  /// False if the clause set is already contradictory at level 0.
  bool add(const Clause& clause) {
    if (clause.empty()) return false;
    if (clause.size() == 1) return enqueue(clause[0]);
    clauses_.push_back(clause);
    const auto idx = static_cast<std::uint32_t>(clauses_.size() - 1);
    watches_[clause[0].code()].push_back(idx);
    watches_[clause[1].code()].push_back(idx);
    return true;
  }

  bool enqueue(Lit l) {
    const int v = lit_value(l);
    if (v == kFalse) return false;
    if (v == kUnset) {
      value_[l.var()] = l.negated() ? kFalse : kTrue;
      trail_.push_back(l);
    }
    return true;
  }

  SatResult run(SatLimits limits) {
    SatResult result;
    for (;;) {
      if (!propagate()) {
        if (!backtrack()) return result;
        continue;
      }
      const std::uint32_t var = next_unassigned();
      if (var == 0) {
        result.sat = true;
        result.model.assign(value_.size(), false);
        for (std::size_t v = 1; v < value_.size(); ++v) result.model[v] = value_[v] == kTrue;
        result.decisions = decisions_;
        return result;
      }
      if (++decisions_ > limits.max_decisions)
        throw Undecided("satcheck: decision cap of " + std::to_string(limits.max_decisions) + " exceeded");
      const Lit d = Lit::positive(var);
      levels_.push_back({trail_.size(), d, false});
      enqueue(d);
    }
  }

 private:
  static constexpr std::int8_t kFalse = 0, kTrue = 1, kUnset = 2;

  struct Level {
    std::size_t trail_start;
    Lit decision;
    bool flipped;
  };

  int lit_value(Lit l) const {
    const std::int8_t v = value_[l.var()];
    if (v == kUnset) return kUnset;
    return v ^ static_cast<int>(l.negated());
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const Lit falsified = ~trail_[head_++];
      auto& ws = watches_[falsified.code()];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t ci = ws[i];
        Clause& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == kTrue) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[c[1].code()].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (!enqueue(c[0])) {
          for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
          ws.resize(keep);
          return false;
        }
      }
      ws.resize(keep);
    }
    return true;
  }

  /// Undo to the most recent unflipped decision and flip it.
  bool backtrack() {
    while (!levels_.empty()) {
      const Level level = levels_.back();
      levels_.pop_back();
      while (trail_.size() > level.trail_start) {
        value_[trail_.back().var()] = kUnset;
        trail_.pop_back();
      }
      head_ = trail_.size();
      if (!level.flipped) {
        levels_.push_back({trail_.size(), ~level.decision, true});
        enqueue(~level.decision);
        return true;
      }
    }
    return false;
  }

  std::uint32_t next_unassigned() const {
    for (std::size_t v = 1; v < value_.size(); ++v)
      if (value_[v] == kUnset) return static_cast<std::uint32_t>(v);
    return 0;
  }

  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Clause> clauses_;
  std::vector<Lit> trail_;
  std::vector<Level> levels_;
  std::size_t head_ = 0;
  std::uint64_t decisions_ = 0;
};

}  // namespace

SatResult solve(const Cnf& cnf, std::span<const Lit> assumptions, SatLimits limits) {
  Dpll dpll(cnf.num_vars);
  for (Lit a : assumptions) {
    if (a.is_true()) continue;
    if (a.is_false() || a.var() > cnf.num_vars) {
      if (a.is_false()) return {};
      throw std::invalid_argument("satcheck: assumption on unknown variable");
    }
    if (!dpll.enqueue(a)) return {};
  }
  for (const auto& clause : cnf.clauses)
    if (!dpll.add(clause)) return {};
  return dpll.run(limits);
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  for (const auto& clause : cnf.clauses) {
    bool ok = false;
    for (Lit l : clause)
      if (l.is_true() || (!l.is_constant() && model.at(l.var()) != l.negated())) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace pbbase
