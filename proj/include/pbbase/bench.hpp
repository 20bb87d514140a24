#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbbase/cost.hpp"
#include "pbbase/mixed_radix.hpp"
#include "pbbase/opb.hpp"
#include "pbbase/search.hpp"

namespace pbbase::bench {

inline constexpr double kClusterBase = 1.9745;

/// ceil(log_c(m)); 0 for m <= 1.
int cluster_key(Int m, double c = kClusterBase);

struct Problem {
  std::string name;
  std::variant<Multiset, opb::PbInstance> input;
  Int max_coefficient() const;
};

/// Seeded multisets: max(S) log-uniform in [2, max_value], the other
/// elements uniform in [1, max(S)], sizes uniform in [1, max_size].
std::vector<Problem> generate_corpus(std::uint64_t seed, std::size_t count, Int max_value, std::size_t max_size);

/// Every *.opb file of a directory, sorted by file name.
std::vector<Problem> load_opb_dir(const std::string& dir);

/// Coefficient multisets of an instance, skipping constraints whose
/// coefficients are all 1.
std::vector<Multiset> coefficient_multisets(const opb::PbInstance& instance);

/// Multiplies every coefficient and threshold by 31^power and, for
/// power > 0, adds a unit slack term so the gcd cannot undo the scaling.
opb::PbInstance scale_by_31(const opb::PbInstance& instance, int power);

struct Config {
  Algorithm algorithm = Algorithm::HashBnB;
  CostKind kind = CostKind::SumDigits;
  Int max_elem = 10000;
  bool primes_only = true;
};

struct Options {
  std::vector<Config> matrix;
  std::optional<std::chrono::duration<double>> timeout;
  unsigned jobs = 1;
  bool solve = false;  // OPB problems only, builtin checker
};

struct Row {
  std::string problem;
  Config config;
  Int max_coefficient = 0;
  int cluster = 0;
  std::string status;  // ok | timeout | error: ...
  Int cost = 0;
  std::string base;
  std::uint64_t nodes_expanded = 0;
  double search_seconds = 0;
  double encode_seconds = 0;
  std::uint64_t clauses = 0;
  std::uint64_t vars = 0;
  std::string solve_outcome;
  double solve_seconds = 0;
};

/// Rows ordered by problem, then by matrix entry, whatever the job count.
std::vector<Row> run(const std::vector<Problem>& problems, const Options& options);

/// One row per (problem, config), then one TOTAL row per config when there
/// were problems. Timing columns are omitted when with_times is false.
void write_csv(std::ostream& out, const std::vector<Row>& rows, const Options& options, bool with_times);

/// Averages per (cluster, config).
void write_cluster_csv(std::ostream& out, const std::vector<Row>& rows, bool with_times);

}  // namespace pbbase::bench
