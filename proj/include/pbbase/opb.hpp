#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbbase/mixed_radix.hpp"
#include "pbbase/pb_constraint.hpp"

namespace pbbase::opb {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class Relation { Geq, Leq, Eq };

struct RawTerm {
  Int coef;
  std::string var;
  bool negated = false;
  friend bool operator==(const RawTerm&, const RawTerm&) = default;
};

struct RawConstraint {
  std::vector<RawTerm> terms;
  Relation relation = Relation::Geq;
  Int rhs = 0;
  std::size_t line = 0;
  friend bool operator==(const RawConstraint&, const RawConstraint&) = default;
};

struct ParsedOpb {
  std::vector<RawConstraint> constraints;
  std::optional<std::vector<RawTerm>> objective;
};

/// Competition OPB text: "*" comment lines, "min:"/"max:" objective, terms
/// "+3 x2" / "-1 ~x4", relations >= <= =, each statement ended by ";".
ParsedOpb parse(std::string_view text);

/// Name <-> id map; ids are dense from 1 in order of first appearance.
class VarTable {
 public:
  std::uint32_t id(const std::string& name);
  std::optional<std::uint32_t> find(const std::string& name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id - 1); }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(names_.size()); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

struct NormalizeOptions {
  /// Clamp every coefficient to the threshold. Changes the base-search input.
  bool saturate = false;
};

/// Rewrites to normal form. Returns 0 constraints when trivially true, 1
/// normally, 2 for "=". Unsatisfiable inputs come back with coefficient sum
/// below the threshold.
std::vector<PbConstraint> normalize(const RawConstraint& rc, VarTable& table, const NormalizeOptions& opts = {});

/// Normal form again: idempotent on normalize's output.
std::vector<PbConstraint> renormalize(const PbConstraint& c, const NormalizeOptions& opts = {});

struct PbInstance {
  VarTable vars;
  std::vector<PbConstraint> constraints;
  std::vector<std::size_t> source_lines;  // per constraint
  bool objective_skipped = false;
  std::size_t dropped_trivial = 0;
};

PbInstance load(std::string_view text, const NormalizeOptions& opts = {});
PbInstance load_file(const std::string& path, const NormalizeOptions& opts = {});

/// OPB text of the normalized instance (">=" constraints only).
std::string print(const PbInstance& instance);

/// Original (name-level) satisfaction check for a raw constraint.
bool holds(const RawConstraint& rc, const std::unordered_map<std::string, bool>& assignment);

}  // namespace pbbase::opb
