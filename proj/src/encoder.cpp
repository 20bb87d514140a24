#include "pbbase/encoder.hpp"

#include <map>
#include <stdexcept>

#include "pbbase/sorting_network.hpp"

namespace pbbase {

Int PbConstraint::coefficient_sum() const {
  Int s = 0;
  for (const auto& t : terms) s += t.coef;
  return s;
}

bool PbConstraint::holds(const std::vector<bool>& assignment) const {
  Int lhs = 0;
  for (const auto& t : terms) {
    const bool value = t.lit.is_constant() ? t.lit.is_true() : assignment.at(t.lit.var()) != t.lit.negated();
    if (value) lhs += t.coef;
  }
  return lhs >= threshold;
}

Multiset coefficient_multiset(const PbConstraint& c) {
  std::vector<Int> coefs;
  coefs.reserve(c.terms.size());
  for (const auto& t : c.terms) coefs.push_back(t.coef);
  return Multiset(std::move(coefs));
}

std::vector<UnaryBus> decompose(const PbConstraint& c, const Base& base) {
  std::vector<UnaryBus> buses(base.size() + 1);
  for (const auto& t : c.terms) {
    const auto d = digits_of(t.coef, base);
    for (std::size_t j = 0; j < d.size(); ++j) buses[j].insert(buses[j].end(), static_cast<std::size_t>(d[j]), t.lit);
  }
  return buses;
}

void encode_geq(std::span<const UnaryBus> digits, std::span<const Int> threshold_digits, CnfBuilder& builder) {
  if (digits.size() != threshold_digits.size())
    throw std::invalid_argument("encode_geq: digit and threshold lengths differ");
  Lit geq = Lit::True();
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const Lit gt = at_least(digits[j], threshold_digits[j] + 1);
    const Lit ge = at_least(digits[j], threshold_digits[j]);
    if (geq.is_true())
      geq = ge;  // gt implies ge
    else if (geq.is_false())
      geq = gt;
    else
      geq = builder.make_or(gt, builder.make_and(ge, geq));
  }
  builder.add_clause({geq});
}

ConstraintEncoding encode_constraint(const PbConstraint& c, const Base& base, CnfBuilder& builder,
                                     EncodeTrace* trace) {
  ConstraintEncoding enc;
  const std::size_t clauses0 = builder.num_clauses();
  const std::uint64_t vars0 = builder.num_vars();
  const std::uint64_t comps0 = builder.comparators();
  auto finish = [&] {
    enc.clauses = builder.num_clauses() - clauses0;
    enc.vars = builder.num_vars() - vars0;
    enc.comparators = builder.comparators() - comps0;
    return enc;
  };

  if (c.threshold <= 0) return finish();
  if (c.statically_unsat()) {
    enc.static_unsat = true;
    builder.add_clause(std::span<const Lit>{});
    return finish();
  }

  const auto buses = decompose(c, base);
  std::vector<UnaryBus> digits(buses.size());
  std::vector<Lit> carries;
  for (std::size_t j = 0; j < buses.size(); ++j) {
    UnaryBus inputs = buses[j];
    inputs.insert(inputs.end(), carries.begin(), carries.end());
    const std::uint64_t before = builder.comparators();
    UnaryBus sorted = sorting_network(inputs, builder);
    enc.networks.push_back({static_cast<Int>(inputs.size()), builder.comparators() - before});
    if (trace) trace->network_outputs.push_back(sorted);
    if (j < base.size()) {
      auto norm = normalizer(sorted, base[j], builder);
      digits[j] = std::move(norm.remainder);
      carries = std::move(norm.carries);
    } else {
      digits[j] = std::move(sorted);
    }
  }
  if (trace) trace->digits = digits;
  encode_geq(digits, digits_of(c.threshold, base), builder);
  return finish();
}

EncodeResult encode_instance(std::span<const PbConstraint> constraints, std::uint32_t num_problem_vars,
                             const EncodeOptions& options) {
  CnfBuilder builder(num_problem_vars);
  EncodeResult result;
  const SearchConfig& cfg = options.search;

  auto choose = [&](const Multiset& set, ConstraintReport& report) {
    SearchResult found = find_base(set, cfg);
    report.base = found.best_base;
    if (found.timed_out && options.fallback_binary) {
      report.base = initial_best(set);
      report.fallback_binary = true;
    }
    report.search = std::move(found);
  };

  std::optional<ConstraintReport> shared;
  if (!options.forced_base && options.policy == BasePolicy::Shared) {
    std::vector<Int> all;
    for (const auto& c : constraints)
      for (const auto& t : c.terms) all.push_back(t.coef);
    if (!all.empty()) {
      shared.emplace();
      choose(Multiset(std::move(all)), *shared);
    }
  }

  // identical coefficient multisets share one search
  std::map<std::vector<Int>, ConstraintReport> cache;

  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const PbConstraint& c = constraints[i];
    ConstraintReport report;
    report.index = i;
    report.kind = cfg.kind;
    if (!c.terms.empty()) {
      const Multiset set = coefficient_multiset(c);
      if (options.forced_base) {
        report.base = *options.forced_base;
      } else if (shared) {
        report.base = shared->base;
        report.search = shared->search;
        report.fallback_binary = shared->fallback_binary;
      } else {
        std::vector<Int> key(set.elements().begin(), set.elements().end());
        auto it = cache.find(key);
        if (it == cache.end()) {
          ConstraintReport fresh;
          choose(set, fresh);
          it = cache.emplace(std::move(key), std::move(fresh)).first;
        }
        report.base = it->second.base;
        report.search = it->second.search;
        report.fallback_binary = it->second.fallback_binary;
      }
      report.cost = cost(cfg.kind, set, report.base);
    }
    report.encoding = encode_constraint(c, report.base, builder);
    result.static_unsat = result.static_unsat || report.encoding.static_unsat;
    result.constraints.push_back(std::move(report));
  }
  result.cnf = std::move(builder).take();
  return result;
}

}  // namespace pbbase
