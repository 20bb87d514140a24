#pragma once

#include <span>
#include <string>
#include <vector>

#include "pbbase/cnf_builder.hpp"
#include "pbbase/mixed_radix.hpp"

namespace pbbase {

/// sum_i a_i * l_i >= threshold in normal form: a_i >= 1, each variable at
/// most once, threshold >= 1. A constraint whose coefficient sum is below the
/// threshold is kept as-is; it encodes to the empty clause.
struct PbConstraint {
  struct Term {
    Int coef;
    Lit lit;
    friend bool operator==(const Term&, const Term&) = default;
  };

  std::vector<Term> terms;
  Int threshold = 1;

  Int coefficient_sum() const;
  bool statically_unsat() const { return coefficient_sum() < threshold; }

  /// Evaluates under a full assignment indexed by variable id (index 0 unused).
  bool holds(const std::vector<bool>& assignment) const;

  friend bool operator==(const PbConstraint&, const PbConstraint&) = default;
};

/// Multiset of the coefficients, duplicates preserved. Requires terms.
Multiset coefficient_multiset(const PbConstraint& c);

}  // namespace pbbase
