#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbbase/cnf_builder.hpp"

namespace pbbase {

/// "c <comment>" lines, then "p cnf <vars> <clauses>", then one clause per
/// line terminated by 0. The empty clause is a bare "0".
void write_dimacs(std::ostream& out, const Cnf& cnf, std::span<const std::string> comments = {});

/// Throws std::runtime_error with the line number on malformed input.
Cnf read_dimacs(std::istream& in);

/// Result lines of a SAT-competition style solver ("s ..." / "v ... 0").
struct SolverOutput {
  enum class Status { Sat, Unsat, Unknown };
  Status status = Status::Unknown;
  std::vector<std::int64_t> values;  // signed literals from the v lines
};

SolverOutput parse_solver_output(const std::string& text);

/// Formats status + model in the same convention.
std::string format_solver_output(bool sat, const std::vector<bool>& model_by_var);

}  // namespace pbbase
