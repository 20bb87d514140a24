#include "pbbase/dimacs.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pbbase {

void write_dimacs(std::ostream& out, const Cnf& cnf, std::span<const std::string> comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  std::string line;
  for (const auto& clause : cnf.clauses) {
    line.clear();
    for (Lit l : clause) {
      line += std::to_string(l.to_dimacs());
      line += ' ';
    }
    line += "0\n";
    out << line;
  }
}

Cnf read_dimacs(std::istream& in) {
  Cnf cnf;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::size_t expected = 0;
  Clause current;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("dimacs line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == '%') continue;
    std::istringstream ls(line);
    if (line[first] == 'p') {
      std::string p, fmt;
      long long vars = -1, clauses = -1;
      ls >> p >> fmt >> vars >> clauses;
      if (fmt != "cnf" || vars < 0 || clauses < 0) fail("bad header");
      cnf.num_vars = static_cast<std::uint32_t>(vars);
      expected = static_cast<std::size_t>(clauses);
      header = true;
      continue;
    }
    if (!header) fail("clause before header");
    long long v;
    while (ls >> v) {
      if (v == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        if (static_cast<unsigned long long>(v < 0 ? -v : v) > cnf.num_vars) fail("variable out of range");
        current.push_back(Lit::from_dimacs(v));
      }
    }
    if (!ls.eof()) fail("bad token");
  }
  if (!current.empty()) cnf.clauses.push_back(current);
  if (!header) fail("missing header");
  if (cnf.clauses.size() != expected) fail("clause count does not match header");
  return cnf;
}

SolverOutput parse_solver_output(const std::string& text) {
  SolverOutput out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos)
        out.status = SolverOutput::Status::Unsat;
      else if (line.find("SATISFIABLE") != std::string::npos)
        out.status = SolverOutput::Status::Sat;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      std::int64_t v;
      while (ls >> v)
        if (v != 0) out.values.push_back(v);
    }
  }
  return out;
}

std::string format_solver_output(bool sat, const std::vector<bool>& model_by_var) {
  if (!sat) return "s UNSATISFIABLE\n";
  std::string out = "s SATISFIABLE\nv";
  for (std::size_t v = 1; v < model_by_var.size(); ++v) {
    out += ' ';
    if (!model_by_var[v]) out += '-';
    out += std::to_string(v);
  }
  out += " 0\n";
  return out;
}

}  // namespace pbbase
