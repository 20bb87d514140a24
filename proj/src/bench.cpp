#include "pbbase/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "pbbase/encoder.hpp"
#include "pbbase/satcheck.hpp"

namespace pbbase::bench {

int cluster_key(Int m, double c) {
  if (m <= 1) return 0;
  const double x = std::log(static_cast<double>(m)) / std::log(c);
  // exact powers of c must not round up to the next cluster
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<int>(r);
  return static_cast<int>(std::ceil(x));
}

Int Problem::max_coefficient() const {
  if (const auto* set = std::get_if<Multiset>(&input)) return set->max();
  Int m = 0;
  for (const auto& c : std::get<opb::PbInstance>(input).constraints)
    for (const auto& t : c.terms) m = std::max(m, t.coef);
  return m;
}

namespace {

/// Uniform in [lo, hi] from raw engine output, so the corpus does not depend
/// on the standard library's distribution implementations.
Int uniform(std::mt19937_64& rng, Int lo, Int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<Int>(rng() % span);
}

}  // namespace

std::vector<Problem> generate_corpus(std::uint64_t seed, std::size_t count, Int max_value, std::size_t max_size) {
  if (max_value < 2) throw std::invalid_argument("corpus max value must be at least 2");
  if (max_size < 1) throw std::invalid_argument("corpus multiset size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Problem> out;
  out.reserve(count);
  const double log_max = std::log2(static_cast<double>(max_value));
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) / static_cast<double>(std::uint64_t{1} << 53);
    Int m = static_cast<Int>(std::exp2(1.0 + u * (log_max - 1.0)));
    m = std::clamp<Int>(m, 2, max_value);
    const auto size = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(max_size)));
    std::vector<Int> elems{m};
    for (std::size_t j = 1; j < size; ++j) elems.push_back(uniform(rng, 1, m));
    out.push_back({"gen" + std::to_string(i), Multiset(std::move(elems))});
  }
  return out;
}

std::vector<Problem> load_opb_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".opb") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Problem> out;
  for (const auto& f : files) out.push_back({f.filename().string(), opb::load_file(f.string())});
  return out;
}

std::vector<Multiset> coefficient_multisets(const opb::PbInstance& instance) {
  std::vector<Multiset> out;
  for (const auto& c : instance.constraints) {
    if (c.terms.empty()) continue;
    if (std::all_of(c.terms.begin(), c.terms.end(), [](const auto& t) { return t.coef == 1; })) continue;
    out.push_back(coefficient_multiset(c));
  }
  return out;
}

opb::PbInstance scale_by_31(const opb::PbInstance& instance, int power) {
  if (power < 0) throw std::invalid_argument("power must be non-negative");
  Int factor = 1;
  for (int i = 0; i < power; ++i) factor *= 31;
  opb::PbInstance out;
  out.vars = instance.vars;
  out.objective_skipped = instance.objective_skipped;
  out.dropped_trivial = instance.dropped_trivial;
  std::size_t index = 0;
  for (const auto& c : instance.constraints) {
    PbConstraint scaled;
    for (const auto& t : c.terms) {
      const Int coef = saturating_mul(t.coef, factor);
      if (coef >= kMaxValue) throw std::overflow_error("scaled coefficient exceeds 2^62");
      scaled.terms.push_back({coef, t.lit});
    }
    scaled.threshold = saturating_mul(c.threshold, factor);
    if (scaled.threshold >= kMaxValue) throw std::overflow_error("scaled threshold exceeds 2^62");
    if (power > 0) {
      std::string name = "slack" + std::to_string(index);
      while (out.vars.find(name)) name += '_';
      scaled.terms.push_back({1, Lit::positive(out.vars.id(name))});
    }
    out.constraints.push_back(std::move(scaled));
    out.source_lines.push_back(index < instance.source_lines.size() ? instance.source_lines[index] : 0);
    ++index;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SearchConfig search_config(const Config& cfg, const Options& options) {
  SearchConfig sc;
  sc.algorithm = cfg.algorithm;
  sc.kind = cfg.kind;
  sc.max_elem = cfg.max_elem;
  sc.primes_only = cfg.primes_only;
  sc.timeout = options.timeout;
  return sc;
}

void run_multiset(const Multiset& set, const SearchConfig& sc, Row& row) {
  const SearchResult r = find_base(set, sc);
  row.status = r.timed_out ? "timeout" : "ok";
  row.cost = r.best_cost;
  row.base = r.best_base.to_string();
  row.nodes_expanded = r.nodes_expanded;
  row.search_seconds = r.elapsed.count();
}

void run_instance(const opb::PbInstance& inst, const SearchConfig& sc, const Options& options, Row& row) {
  EncodeOptions eo;
  eo.search = sc;
  const auto t0 = Clock::now();
  const EncodeResult enc = encode_instance(inst.constraints, inst.vars.size(), eo);
  const double total = seconds_since(t0);
  bool timed_out = false;
  for (const auto& rep : enc.constraints) {
    row.cost += rep.cost;
    if (rep.search) {
      row.nodes_expanded += rep.search->nodes_expanded;
      row.search_seconds += rep.search->elapsed.count();
      timed_out = timed_out || rep.search->timed_out;
    }
  }
  row.encode_seconds = std::max(0.0, total - row.search_seconds);
  row.clauses = enc.cnf.clauses.size();
  row.vars = enc.cnf.num_vars;
  row.status = timed_out ? "timeout" : "ok";
  if (!options.solve) return;
  const auto s0 = Clock::now();
  if (enc.static_unsat) {
    row.solve_outcome = "UNSAT";
  } else {
    try {
      row.solve_outcome = solve(enc.cnf).sat ? "SAT" : "UNSAT";
    } catch (const Undecided&) {
      row.solve_outcome = "UNKNOWN";
    }
  }
  row.solve_seconds = seconds_since(s0);
}

}  // namespace

std::vector<Row> run(const std::vector<Problem>& problems, const Options& options) {
  const std::size_t per = options.matrix.size();
  std::vector<Row> rows(problems.size() * per);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      const Problem& p = problems[i / per];
      const Config& cfg = options.matrix[i % per];
      Row& row = rows[i];
      row.problem = p.name;
      row.config = cfg;
      row.max_coefficient = p.max_coefficient();
      row.cluster = cluster_key(row.max_coefficient);
      try {
        const SearchConfig sc = search_config(cfg, options);
        if (const auto* set = std::get_if<Multiset>(&p.input))
          run_multiset(*set, sc, row);
        else
          run_instance(std::get<opb::PbInstance>(p.input), sc, options, row);
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(6);
  o << s;
  return o.str();
}

void config_fields(std::ostream& out, const Config& c) {
  out << to_string(c.algorithm) << ',' << to_string(c.kind) << ',' << c.max_elem << ',' << (c.primes_only ? 1 : 0);
}

bool same_config(const Config& a, const Config& b) {
  return a.algorithm == b.algorithm && a.kind == b.kind && a.max_elem == b.max_elem && a.primes_only == b.primes_only;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Row>& rows, const Options& options, bool with_times) {
  out << "problem,algo,cost_kind,max_elem,primes_only,max_coef,cluster,status,cost,base,nodes_expanded,clauses,vars,"
         "solve";
  if (with_times) out << ",search_s,encode_s,solve_s";
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.problem) << ',';
    config_fields(out, r.config);
    out << ',' << r.max_coefficient << ',' << r.cluster << ',' << csv_field(r.status) << ',' << r.cost << ','
        << csv_field(r.base) << ',' << r.nodes_expanded << ',' << r.clauses << ',' << r.vars << ',' << r.solve_outcome;
    if (with_times)
      out << ',' << fmt_seconds(r.search_seconds) << ',' << fmt_seconds(r.encode_seconds) << ','
          << fmt_seconds(r.solve_seconds);
    out << '\n';
  }
  if (rows.empty()) return;
  for (const auto& cfg : options.matrix) {
    std::size_t ok = 0, n = 0;
    Int cost = 0;
    std::uint64_t nodes = 0, clauses = 0, vars = 0;
    double search = 0, encode = 0, solve = 0;
    for (const auto& r : rows) {
      if (!same_config(r.config, cfg)) continue;
      ++n;
      if (r.status == "ok") ++ok;
      cost += r.cost;
      nodes += r.nodes_expanded;
      clauses += r.clauses;
      vars += r.vars;
      search += r.search_seconds;
      encode += r.encode_seconds;
      solve += r.solve_seconds;
    }
    out << "TOTAL,";
    config_fields(out, cfg);
    out << ",,," << ok << '/' << n << ',' << cost << ",," << nodes << ',' << clauses << ',' << vars << ',';
    if (with_times) out << ',' << fmt_seconds(search) << ',' << fmt_seconds(encode) << ',' << fmt_seconds(solve);
    out << '\n';
  }
}

void write_cluster_csv(std::ostream& out, const std::vector<Row>& rows, bool with_times) {
  struct Acc {
    Config cfg;
    std::size_t n = 0, ok = 0;
    double cost = 0, search = 0, encode = 0;
  };
  // keyed by cluster, then first-appearance order of the config
  std::map<std::pair<int, std::size_t>, Acc> acc;
  std::vector<Config> seen;
  for (const auto& r : rows) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const Config& c) { return same_config(c, r.config); });
    const std::size_t ci = static_cast<std::size_t>(it - seen.begin());
    if (it == seen.end()) seen.push_back(r.config);
    Acc& a = acc[{r.cluster, ci}];
    a.cfg = r.config;
    ++a.n;
    if (r.status == "ok") ++a.ok;
    a.cost += static_cast<double>(r.cost);
    a.search += r.search_seconds;
    a.encode += r.encode_seconds;
  }
  out << "cluster,algo,cost_kind,max_elem,primes_only,problems,solved,avg_cost";
  if (with_times) out << ",avg_search_s,avg_encode_s";
  out << '\n';
  for (const auto& [key, a] : acc) {
    const double n = static_cast<double>(a.n);
    out << key.first << ',';
    config_fields(out, a.cfg);
    out << ',' << a.n << ',' << a.ok << ',' << fmt_seconds(a.cost / n);
    if (with_times) out << ',' << fmt_seconds(a.search / n) << ',' << fmt_seconds(a.encode / n);
    out << '\n';
  }
}

}  // namespace pbbase::bench
