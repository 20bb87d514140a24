#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbbase/bench.hpp"
#include "support.hpp"

using namespace pbbase;
using namespace pbbase::bench;

namespace {

std::string csv_of(const std::vector<Problem>& problems, const Options& opts) {
  std::ostringstream o;
  write_csv(o, run(problems, opts), opts, false);
  return o.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cluster key") {
  CHECK(cluster_key(60) == 7);
  CHECK(cluster_key(1) == 0);
  CHECK(cluster_key(2) == 2);
  CHECK(cluster_key(8, 2.0) == 3);
  CHECK(cluster_key(9, 2.0) == 4);
  for (Int m : {3, 100, 10000, 2147483647}) {
    const int k = cluster_key(m);
    CHECK(std::pow(kClusterBase, k) >= static_cast<double>(m) * (1 - 1e-12));
    CHECK(std::pow(kClusterBase, k - 1) < static_cast<double>(m));
  }
}

TEST_CASE("generated corpus is seeded") {
  const auto a = generate_corpus(7, 25, 100000, 6);
  const auto b = generate_corpus(7, 25, 100000, 6);
  const auto c = generate_corpus(8, 25, 100000, 6);
  REQUIRE(a.size() == 25);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& sa = std::get<Multiset>(a[i].input);
    CHECK(sa == std::get<Multiset>(b[i].input));
    CHECK(sa.size() <= 6);
    CHECK(sa.max() <= 100000);
    differs = differs || !(sa == std::get<Multiset>(c[i].input));
  }
  CHECK(differs);
}

TEST_CASE("csv accounting and deterministic ordering") {
  const auto problems = generate_corpus(3, 10, 5000, 5);
  Options opts;
  Config dfs;
  dfs.algorithm = Algorithm::DfsHP;
  Config hash;
  opts.matrix = {dfs, hash};
  const std::string one = csv_of(problems, opts);
  CHECK(lines(one) == 1 + 20 + 2);
  CHECK(one.find("TOTAL,dfs,sum_digits") != std::string::npos);
  CHECK(one.find("TOTAL,hashbnb,sum_digits") != std::string::npos);
  opts.jobs = 4;
  CHECK(csv_of(problems, opts) == one);

  const auto rows = run(problems, opts);
  for (std::size_t i = 0; i < rows.size(); i += 2) CHECK(rows[i].cost == rows[i + 1].cost);
  std::ostringstream cl;
  write_cluster_csv(cl, rows, true);
  CHECK(cl.str().rfind("cluster,algo,cost_kind", 0) == 0);
  CHECK(lines(cl.str()) >= 3);
}

TEST_CASE("failures are recorded and the run continues") {
  std::vector<Problem> problems;
  problems.push_back({"big", Multiset{20000}});
  problems.push_back({"small", Multiset{3, 5}});
  Options opts;
  Config brute;
  brute.algorithm = Algorithm::Brute;
  opts.matrix = {brute};
  const auto rows = run(problems, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status.rfind("error:", 0) == 0);
  CHECK(rows[1].status == "ok");
}

TEST_CASE("opb directory input") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pbbase_bench_dir_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Options opts;
  opts.matrix = {Config{}};
  CHECK(csv_of(load_opb_dir(dir.string()), opts) ==
        "problem,algo,cost_kind,max_elem,primes_only,max_coef,cluster,status,cost,base,nodes_expanded,clauses,vars,"
        "solve\n");
  std::ofstream(dir / "b.opb") << "+2 x1 +2 x2 +2 x3 +2 x4 +5 x5 +18 x6 >= 23 ;\n";
  std::ofstream(dir / "a.opb") << "+1 x +1 y >= 1 ;\n+3 x +2 y >= 4 ;\n";
  std::ofstream(dir / "ignored.txt") << "junk";
  const auto problems = load_opb_dir(dir.string());
  REQUIRE(problems.size() == 2);
  CHECK(problems[0].name == "a.opb");
  CHECK(problems[1].max_coefficient() == 18);
  opts.solve = true;
  const auto rows = run(problems, opts);
  CHECK(rows[0].solve_outcome == "SAT");
  CHECK(rows[1].solve_outcome == "SAT");
  CHECK(rows[1].clauses > 0);
  fs::remove_all(dir);

  const auto& inst = std::get<opb::PbInstance>(problems[0].input);
  CHECK(coefficient_multisets(inst).size() == 1);
}

TEST_CASE("31^i scaling keeps the solution set") {
  const auto inst = opb::load("+3 x +2 y +1 z >= 4 ;\n+5 x +4 ~z >= 5 ;\n");
  for (int i = 0; i <= 5; ++i) {
    const auto scaled = scale_by_31(inst, i);
    const std::uint32_t orig = inst.vars.size();
    REQUIRE(scaled.constraints.size() == inst.constraints.size());
    if (i > 0) CHECK(scaled.vars.size() == orig + 2);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << scaled.vars.size()); ++mask) {
      std::vector<bool> a(scaled.vars.size() + 1);
      for (std::uint32_t v = 1; v <= scaled.vars.size(); ++v) a[v] = (mask >> (v - 1)) & 1u;
      std::vector<bool> base_assignment(a.begin(), a.begin() + orig + 1);
      for (std::size_t k = 0; k < inst.constraints.size(); ++k)
        REQUIRE(scaled.constraints[k].holds(a) == inst.constraints[k].holds(base_assignment));
    }
    // the gcd cannot undo the scaling
    const auto re = opb::load(opb::print(scaled));
    CHECK(re.constraints[0].threshold == scaled.constraints[0].threshold);
  }
}
