// pbbase: optimal mixed-radix bases and PB-to-CNF encoding from the command line.

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pbbase/bench.hpp"
#include "pbbase/dimacs.hpp"
#include "pbbase/encoder.hpp"
#include "pbbase/opb.hpp"
#include "pbbase/satcheck.hpp"
#include "pbbase/search.hpp"

namespace {

using namespace pbbase;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kToolError = 3, kStaticUnsat = 10 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ToolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::string cost = "digits";
  std::string algo = "hashbnb";
  Int max_elem = 10000;
  bool primes_only = false;
  bool all_integers = false;
  double timeout = 600;

  void attach(CLI::App* app) {
    app->add_option("--cost", cost, "digits | carry | comp")->capture_default_str();
    app->add_option("--algo", algo, "dfs | bnb | hashbnb | brute")->capture_default_str();
    app->add_option("--max-elem", max_elem, "largest radix considered")->capture_default_str()->check(
        CLI::PositiveNumber);
    auto* p = app->add_flag("--primes-only", primes_only, "extend with primes only (default for digits)");
    app->add_flag("--all-integers", all_integers, "extend with every integer (default for carry and comp)")
        ->excludes(p);
    app->add_option("--timeout", timeout, "seconds per base search")->capture_default_str()->check(
        CLI::NonNegativeNumber);
  }

  SearchConfig config() const {
    SearchConfig cfg;
    try {
      cfg.kind = parse_cost_kind(cost);
      cfg.algorithm = parse_algorithm(algo);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg.max_elem = max_elem;
    cfg.primes_only = primes_only || (!all_integers && cfg.kind == CostKind::SumDigits);
    if (timeout > 0) cfg.timeout = std::chrono::duration<double>(timeout);
    return cfg;
  }
};

json base_json(const Base& b) { return json(std::vector<Int>(b.radices().begin(), b.radices().end())); }

json search_json(const SearchResult& r) {
  return {{"base", base_json(r.best_base)},
          {"cost", r.best_cost},
          {"nodes_expanded", r.nodes_expanded},
          {"nodes_pruned", r.nodes_pruned},
          {"optimal_guaranteed", r.optimal_guaranteed},
          {"timed_out", r.timed_out}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ToolError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

opb::PbInstance load_instance(const std::string& path, const std::string& text) {
  try {
    return opb::load(text);
  } catch (const opb::ParseError& e) {
    throw InputParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                          e.what());
  }
}

void warn_objective(const opb::PbInstance& inst) {
  if (inst.objective_skipped) std::cerr << "warning: objective ignored; encoding the decision problem only\n";
}

// find-base ---------------------------------------------------------------

struct FindBaseArgs {
  std::string set;
  std::string input;
  bool as_json = false;
  SearchFlags search;
};

int cmd_find_base(const FindBaseArgs& a) {
  if (a.set.empty() == a.input.empty()) throw UsageError("give exactly one of --set or an OPB file");
  const SearchConfig cfg = a.search.config();
  std::vector<std::pair<std::string, Multiset>> sets;
  if (!a.set.empty()) {
    try {
      sets.emplace_back("set", parse_multiset(a.set));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    const auto inst = load_instance(a.input, read_file(a.input));
    warn_objective(inst);
    for (std::size_t i = 0; i < inst.constraints.size(); ++i)
      if (!inst.constraints[i].terms.empty())
        sets.emplace_back("constraint " + std::to_string(i) + " (line " + std::to_string(inst.source_lines[i]) + ")",
                          coefficient_multiset(inst.constraints[i]));
  }

  json out = json::array();
  for (const auto& [label, set] : sets) {
    SearchResult r;
    try {
      r = find_base(set, cfg);
    } catch (const InputTooLarge& e) {
      throw UsageError(e.what());
    }
    if (a.as_json) {
      json j = search_json(r);
      j["input"] = label;
      j["set"] = set.to_string();
      j["cost_kind"] = to_string(cfg.kind);
      j["algorithm"] = to_string(cfg.algorithm);
      j["seconds"] = r.elapsed.count();
      out.push_back(std::move(j));
      continue;
    }
    std::cout << "input " << label << '\n'
              << "set " << set.to_string() << '\n'
              << "cost_kind " << to_string(cfg.kind) << '\n'
              << "algorithm " << to_string(cfg.algorithm) << '\n'
              << "base " << r.best_base.to_string() << '\n'
              << "cost " << r.best_cost << '\n'
              << "nodes_expanded " << r.nodes_expanded << '\n'
              << "optimal_guaranteed " << (r.optimal_guaranteed ? "yes" : "no") << '\n';
    if (r.timed_out) std::cout << "note: search timed out; best base found so far\n";
    else if (!r.optimal_guaranteed)
      std::cout << "note: " << to_string(cfg.algorithm) << " is not guaranteed optimal for " << to_string(cfg.kind)
                << "; use --algo bnb for a certified optimum\n";
    std::cout << "seconds " << r.elapsed.count() << '\n';
  }
  if (a.as_json) std::cout << (a.set.empty() ? out : out.at(0)).dump(2) << '\n';
  return kOk;
}

// encode ------------------------------------------------------------------

struct EncodeArgs {
  std::string input;
  std::string output;
  std::string stats;
  std::string base;
  std::string policy = "per-constraint";
  bool fallback_binary = false;
  SearchFlags search;
};

struct Encoded {
  opb::PbInstance instance;
  EncodeResult result;
};

Encoded encode_file(const std::string& path, const EncodeArgs& a) {
  Encoded e{load_instance(path, read_file(path)), {}};
  warn_objective(e.instance);
  EncodeOptions opts;
  opts.search = a.search.config();
  opts.fallback_binary = a.fallback_binary;
  if (!a.base.empty()) {
    try {
      opts.forced_base = parse_base(a.base);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
  if (a.policy == "shared")
    opts.policy = BasePolicy::Shared;
  else if (a.policy != "per-constraint")
    throw UsageError("--policy must be per-constraint or shared");
  try {
    e.result = encode_instance(e.instance.constraints, e.instance.vars.size(), opts);
  } catch (const InputTooLarge& ex) {
    throw UsageError(ex.what());
  }
  return e;
}

json stats_json(const Encoded& e) {
  json cons = json::array();
  std::uint64_t comparators = 0;
  std::size_t clauses = 0;
  Int cost = 0;
  for (const auto& rep : e.result.constraints) {
    json nets = json::array();
    for (const auto& n : rep.encoding.networks) nets.push_back({{"size", n.size}, {"comparators", n.comparators}});
    json j = {{"index", rep.index},
              {"line", e.instance.source_lines.at(rep.index)},
              {"base", base_json(rep.base)},
              {"cost_kind", to_string(rep.kind)},
              {"cost", rep.cost},
              {"clauses", rep.encoding.clauses},
              {"vars", rep.encoding.vars},
              {"comparators", rep.encoding.comparators},
              {"networks", nets},
              {"static_unsat", rep.encoding.static_unsat},
              {"fallback_binary", rep.fallback_binary}};
    if (rep.search) {
      json s = search_json(*rep.search);
      s.erase("base");
      s.erase("cost");
      j["search"] = s;
    }
    comparators += rep.encoding.comparators;
    clauses += rep.encoding.clauses;
    cost += rep.cost;
    cons.push_back(std::move(j));
  }
  return {{"constraints", cons},
          {"totals",
           {{"constraints", e.result.constraints.size()},
            {"problem_vars", e.instance.vars.size()},
            {"vars", e.result.cnf.num_vars},
            {"clauses", e.result.cnf.clauses.size()},
            {"constraint_clauses", clauses},
            {"comparators", comparators},
            {"cost", cost}}},
          {"dropped_trivial", e.instance.dropped_trivial},
          {"objective_skipped", e.instance.objective_skipped},
          {"static_unsat", e.result.static_unsat}};
}

std::vector<std::string> dimacs_comments(const Encoded& e) {
  std::vector<std::string> c;
  c.push_back("pbbase encoding");
  for (std::uint32_t v = 1; v <= e.instance.vars.size(); ++v)
    c.push_back("var " + std::to_string(v) + " " + e.instance.vars.name(v));
  for (const auto& rep : e.result.constraints) {
    std::string nets;
    for (const auto& n : rep.encoding.networks) nets += (nets.empty() ? "" : ",") + std::to_string(n.size);
    c.push_back("constraint " + std::to_string(rep.index) + " base " + rep.base.to_string() + " " +
                std::string(to_string(rep.kind)) + " " + std::to_string(rep.cost) + " networks <" + nets +
                "> clauses " + std::to_string(rep.encoding.clauses) + " comparators " +
                std::to_string(rep.encoding.comparators));
  }
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ToolError("cannot write '" + path + "': " + std::strerror(errno));
  out << text;
  if (!out) throw ToolError("write to '" + path + "' failed");
}

int cmd_encode(const EncodeArgs& a) {
  const Encoded e = encode_file(a.input, a);
  std::ostringstream cnf;
  const auto comments = dimacs_comments(e);
  write_dimacs(cnf, e.result.cnf, comments);
  write_text(a.output, cnf.str());
  if (!a.stats.empty()) write_text(a.stats, stats_json(e).dump(2) + "\n");
  if (e.result.static_unsat) {
    std::cerr << "statically unsatisfiable: a constraint encoded to the empty clause\n";
    return kStaticUnsat;
  }
  return kOk;
}

// solve -------------------------------------------------------------------

struct SolveArgs {
  EncodeArgs encode;
  bool builtin = false;
  std::string solver;
  std::vector<std::string> solver_args;
  std::uint64_t max_decisions = std::uint64_t{1} << 24;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

std::filesystem::path temp_cnf_path() {
  static std::atomic<int> counter{0};
  return std::filesystem::temp_directory_path() /
         ("pbbase-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".cnf");
}

/// Runs the solver on a DIMACS file; exit codes 0, 10 and 20 are normal.
SolverOutput run_external(const SolveArgs& a, const Cnf& cnf) {
  const auto path = temp_cnf_path();
  {
    std::ofstream out(path);
    if (!out) throw ToolError("cannot write '" + path.string() + "'");
    write_dimacs(out, cnf);
  }
  std::string cmd = shell_quote(a.solver);
  for (const auto& arg : a.solver_args) cmd += " " + shell_quote(arg);
  cmd += " " + shell_quote(path.string());
  std::string text;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw ToolError("cannot start solver '" + a.solver + "'");
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = ::pclose(pipe);
  std::filesystem::remove(path);
  if (!WIFEXITED(status)) throw ToolError("solver terminated abnormally");
  const int code = WEXITSTATUS(status);
  if (code != 0 && code != 10 && code != 20)
    throw ToolError("solver exited with status " + std::to_string(code));
  const SolverOutput out = parse_solver_output(text);
  if (out.status == SolverOutput::Status::Unknown) throw ToolError("solver output has no 's' status line");
  return out;
}

int cmd_solve(const SolveArgs& a) {
  if (a.builtin == !a.solver.empty()) throw UsageError("give exactly one of --builtin or --solver");
  const std::string text = read_file(a.encode.input);
  const Encoded e = encode_file(a.encode.input, a.encode);
  if (e.result.static_unsat) {
    std::cout << "s UNSATISFIABLE\n";
    return kOk;
  }

  const std::uint32_t nvars = e.instance.vars.size();
  std::vector<bool> model(nvars + 1, false);
  if (a.builtin) {
    SatResult r;
    try {
      r = solve(e.result.cnf, {}, SatLimits{a.max_decisions});
    } catch (const Undecided& ex) {
      throw ToolError(ex.what());
    }
    if (!r.sat) {
      std::cout << "s UNSATISFIABLE\n";
      return kOk;
    }
    for (std::uint32_t v = 1; v <= nvars; ++v) model[v] = r.model.at(v);
  } else {
    const SolverOutput out = run_external(a, e.result.cnf);
    if (out.status == SolverOutput::Status::Unsat) {
      std::cout << "s UNSATISFIABLE\n";
      return kOk;
    }
    for (std::int64_t lit : out.values) {
      const auto v = static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
      if (v == 0 || v > e.result.cnf.num_vars) throw ToolError("solver model names unknown variable " + std::to_string(lit));
      if (v <= nvars) model[v] = lit > 0;
    }
  }

  std::unordered_map<std::string, bool> by_name;
  for (std::uint32_t v = 1; v <= nvars; ++v) by_name[e.instance.vars.name(v)] = model[v];
  const opb::ParsedOpb raw = opb::parse(text);
  for (const auto& rc : raw.constraints)
    if (!opb::holds(rc, by_name))
      throw ToolError("model violates the constraint on line " + std::to_string(rc.line));

  std::cout << "s SATISFIABLE\nv";
  for (std::uint32_t v = 1; v <= nvars; ++v) std::cout << ' ' << (model[v] ? "" : "-") << e.instance.vars.name(v);
  std::cout << "\nc verified " << raw.constraints.size() << " constraints\n";
  return kOk;
}

int cmd_dimacs_solve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ToolError("cannot open '" + path + "'");
  const Cnf cnf = read_dimacs(in);
  const SatResult r = solve(cnf);
  std::cout << format_solver_output(r.sat, r.sat ? r.model : std::vector<bool>{});
  return r.sat ? 10 : 20;
}

// bench -------------------------------------------------------------------

struct BenchArgs {
  std::string opb_dir;
  std::size_t corpus = 20;
  std::uint64_t seed = 1;
  Int corpus_max = 10000;
  std::size_t corpus_size = 6;
  std::vector<std::string> algos{"hashbnb"};
  std::vector<std::string> costs{"digits"};
  std::vector<Int> max_elems{10000};
  bool primes_only = false;
  bool all_integers = false;
  double timeout = 600;
  unsigned jobs = 1;
  std::string csv;
  std::string cluster_csv;
  bool no_timing = false;
  bool solve = false;
  std::string scaled_out;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<bench::Problem> problems;
  if (!a.opb_dir.empty()) {
    if (!std::filesystem::is_directory(a.opb_dir)) throw ToolError("not a directory: '" + a.opb_dir + "'");
    problems = bench::load_opb_dir(a.opb_dir);
  } else {
    try {
      problems = bench::generate_corpus(a.seed, a.corpus, a.corpus_max, a.corpus_size);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  if (!a.scaled_out.empty()) {
    if (a.opb_dir.empty()) throw UsageError("--scaled-out needs --opb-dir");
    std::filesystem::create_directories(a.scaled_out);
    for (const auto& p : problems) {
      const auto& inst = std::get<opb::PbInstance>(p.input);
      const std::string stem = std::filesystem::path(p.name).stem().string();
      for (int i = 0; i <= 5; ++i)
        write_text((std::filesystem::path(a.scaled_out) / (stem + "_31e" + std::to_string(i) + ".opb")).string(),
                   opb::print(bench::scale_by_31(inst, i)));
    }
  }

  bench::Options opts;
  opts.jobs = a.jobs;
  opts.solve = a.solve;
  if (a.timeout > 0) opts.timeout = std::chrono::duration<double>(a.timeout);
  try {
    for (const auto& al : a.algos)
      for (const auto& c : a.costs)
        for (Int l : a.max_elems) {
          bench::Config cfg;
          cfg.algorithm = parse_algorithm(al);
          cfg.kind = parse_cost_kind(c);
          cfg.max_elem = l;
          cfg.primes_only = a.primes_only || (!a.all_integers && cfg.kind == CostKind::SumDigits);
          opts.matrix.push_back(cfg);
        }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto rows = bench::run(problems, opts);
  std::ostringstream csv;
  bench::write_csv(csv, rows, opts, !a.no_timing);
  write_text(a.csv, csv.str());
  if (!a.cluster_csv.empty()) {
    std::ostringstream cl;
    bench::write_cluster_csv(cl, rows, !a.no_timing);
    write_text(a.cluster_csv, cl.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal mixed-radix bases for pseudo-Boolean constraints and their CNF encoding"};
  app.require_subcommand(1);

  FindBaseArgs fb;
  auto* find = app.add_subcommand("find-base", "search an optimal base for a multiset or each OPB constraint");
  find->add_option("--set", fb.set, "comma-separated positive integers, e.g. \"16,30,54,60\"");
  find->add_option("input", fb.input, "OPB file");
  find->add_flag("--json", fb.as_json, "JSON output");
  fb.search.attach(find);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "encode an OPB instance to DIMACS CNF");
  auto attach_encode = [](CLI::App* sub, EncodeArgs& e) {
    sub->add_option("input", e.input, "OPB file")->required();
    sub->add_option("--base", e.base, "force this base for every constraint, e.g. \"2,3,3\"");
    sub->add_option("--policy", e.policy, "per-constraint | shared")->capture_default_str();
    sub->add_flag("--fallback-binary", e.fallback_binary, "use the binary base when a base search times out");
    e.search.attach(sub);
  };
  attach_encode(encode, enc);
  encode->add_option("-o,--output", enc.output, "DIMACS output path (default stdout)");
  encode->add_option("--stats", enc.stats, "write encoding statistics as JSON to this path");

  SolveArgs sv;
  auto* solve_cmd = app.add_subcommand("solve", "encode and solve an OPB instance");
  attach_encode(solve_cmd, sv.encode);
  solve_cmd->add_flag("--builtin", sv.builtin, "use the built-in DPLL checker (small instances)");
  solve_cmd->add_option("--solver", sv.solver, "external SAT solver executable, given the DIMACS file");
  solve_cmd->add_option("--solver-arg", sv.solver_args, "extra argument placed before the DIMACS file");
  solve_cmd->add_option("--max-decisions", sv.max_decisions, "decision cap of the built-in checker")
      ->capture_default_str();

  std::string dimacs_path;
  auto* dsolve = app.add_subcommand("dimacs-solve", "solve a DIMACS file with the built-in checker");
  dsolve->add_option("file", dimacs_path)->required();
  dsolve->group("");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "run a search/encoding configuration matrix and write CSV");
  bench_cmd->add_option("--opb-dir", bn.opb_dir, "directory of OPB instances (default: generated multisets)");
  bench_cmd->add_option("--corpus", bn.corpus, "number of generated multisets")->capture_default_str();
  bench_cmd->add_option("--seed", bn.seed, "generator seed")->capture_default_str();
  bench_cmd->add_option("--corpus-max", bn.corpus_max, "largest generated element")->capture_default_str();
  bench_cmd->add_option("--corpus-size", bn.corpus_size, "largest generated multiset size")->capture_default_str();
  bench_cmd->add_option("--algos", bn.algos, "algorithms")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--costs", bn.costs, "cost kinds")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--max-elems", bn.max_elems, "radix limits")->delimiter(',')->capture_default_str();
  auto* bp = bench_cmd->add_flag("--primes-only", bn.primes_only, "primes only for every cost kind");
  bench_cmd->add_flag("--all-integers", bn.all_integers, "all integers for every cost kind")->excludes(bp);
  bench_cmd->add_option("--timeout", bn.timeout, "seconds per base search")->capture_default_str();
  bench_cmd->add_option("--jobs", bn.jobs, "parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bn.csv, "per-problem CSV path (default stdout)");
  bench_cmd->add_option("--cluster-csv", bn.cluster_csv, "cluster-averaged CSV path");
  bench_cmd->add_flag("--no-timing", bn.no_timing, "omit timing columns (byte-reproducible output)");
  bench_cmd->add_flag("--solve", bn.solve, "also solve OPB instances with the built-in checker");
  bench_cmd->add_option("--scaled-out", bn.scaled_out, "write 31^i-scaled variants (i = 0..5) of each OPB instance here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*find) return cmd_find_base(fb);
    if (*encode) return cmd_encode(enc);
    if (*solve_cmd) return cmd_solve(sv);
    if (*dsolve) return cmd_dimacs_solve(dimacs_path);
    if (*bench_cmd) return cmd_bench(bn);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kToolError;
  }
  return kUsage;
}
