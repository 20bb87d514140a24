#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pbbase/cnf_builder.hpp"

namespace pbbase {

/// Thrown when the decision cap is hit before an answer is found.
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SatLimits {
  std::uint64_t max_decisions = std::uint64_t{1} << 24;
};

struct SatResult {
  bool sat = false;
  std::vector<bool> model;  // indexed by variable id; slot 0 unused
  std::uint64_t decisions = 0;
};

/// Complete DPLL with unit propagation (two watched literals) and
/// chronological backtracking. Branches on the lowest unassigned variable,
/// TRUE first. Meant for verification at desk scale, not for speed.
SatResult solve(const Cnf& cnf, std::span<const Lit> assumptions = {}, SatLimits limits = {});

/// Checks a full model against every clause.
bool satisfies(const Cnf& cnf, const std::vector<bool>& model);

}  // namespace pbbase
