#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pbbase/cnf_builder.hpp"
#include "pbbase/cost.hpp"
#include "pbbase/mixed_radix.hpp"
#include "pbbase/pb_constraint.hpp"
#include "pbbase/search.hpp"

namespace pbbase {

/// Input bus per digit position 0..k: literal l appears d_j times at
/// position j, where d_j is digit j of its coefficient.
std::vector<UnaryBus> decompose(const PbConstraint& c, const Base& base);

/// Constrains the mixed-radix number whose digit j is the unary bus
/// digits[j] to be >= value_of(threshold_digits). Compares most significant
/// digit first: geq_j = (D_j > c_j) | (D_j >= c_j & geq_{j-1}).
void encode_geq(std::span<const UnaryBus> digits, std::span<const Int> threshold_digits, CnfBuilder& builder);

struct NetworkStat {
  Int size = 0;
  std::uint64_t comparators = 0;
};

struct ConstraintEncoding {
  std::vector<NetworkStat> networks;  // one per digit position
  std::size_t clauses = 0;
  std::uint64_t vars = 0;
  std::uint64_t comparators = 0;
  bool static_unsat = false;
};

/// Buses produced while encoding; for inspection in tests and diagnostics.
struct EncodeTrace {
  std::vector<UnaryBus> network_outputs;
  std::vector<UnaryBus> digits;
};

/// decompose -> per-position sorter (carries from position j-1 appended)
/// -> normalizer for positions < k -> encode_geq against threshold digits.
ConstraintEncoding encode_constraint(const PbConstraint& c, const Base& base, CnfBuilder& builder,
                                     EncodeTrace* trace = nullptr);

enum class BasePolicy { PerConstraint, Shared };

struct EncodeOptions {
  SearchConfig search;
  std::optional<Base> forced_base;
  BasePolicy policy = BasePolicy::PerConstraint;
  /// On a search timeout use the binary base instead of the best found.
  bool fallback_binary = false;
};

struct ConstraintReport {
  std::size_t index = 0;
  Base base;
  CostKind kind = CostKind::SumDigits;
  Int cost = 0;
  ConstraintEncoding encoding;
  std::optional<SearchResult> search;  // absent for forced bases or empty constraints
  bool fallback_binary = false;
};

struct EncodeResult {
  Cnf cnf;
  std::vector<ConstraintReport> constraints;
  bool static_unsat = false;
};

/// Encodes every constraint into one shared variable space. Problem
/// variables keep ids 1..num_problem_vars.
EncodeResult encode_instance(std::span<const PbConstraint> constraints, std::uint32_t num_problem_vars,
                             const EncodeOptions& options);

}  // namespace pbbase
