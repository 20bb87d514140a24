#include "pbbase/opb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace pbbase::opb {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

__extension__ using Wide = __int128;

struct Token {
  enum class Kind { Int, Ident, Geq, Leq, Eq, Semi, Min, Max, End } kind;
  std::string text;
  Int value = 0;
  bool negated = false;  // Ident preceded by '~'
  std::size_t line = 0, column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = column();
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    const char c = text_[pos_];
    if (c == ';') {
      ++pos_;
      t.kind = Token::Kind::Semi;
      return t;
    }
    if (c == '>' || c == '<') {
      if (peek(1) != '=') fail(t, std::string("expected '") + c + "='");
      pos_ += 2;
      t.kind = c == '>' ? Token::Kind::Geq : Token::Kind::Leq;
      return t;
    }
    if (c == '=') {
      ++pos_;
      t.kind = Token::Kind::Eq;
      return t;
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool negative = false;
      if (c == '+' || c == '-') {
        negative = c == '-';
        ++pos_;
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail(t, "expected digits after sign");
      Int v = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
      if (ec != std::errc{} || v > kMaxValue) fail(t, "integer out of range (limit 2^62)");
      (void)ptr;
      t.kind = Token::Kind::Int;
      t.value = negative ? -v : v;
      return t;
    }
    if (c == '~' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      if (c == '~') {
        t.negated = true;
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '[' ||
              text_[pos_] == ']' || text_[pos_] == '.'))
        ++pos_;
      if (start == pos_) fail(t, "expected variable name after '~'");
      t.text = std::string(text_.substr(start, pos_ - start));
      if (!t.negated && pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        if (t.text == "min") {
          t.kind = Token::Kind::Min;
          return t;
        }
        if (t.text == "max") {
          t.kind = Token::Kind::Max;
          return t;
        }
        fail(t, "unknown section '" + t.text + ":'");
      }
      t.kind = Token::Kind::Ident;
      return t;
    }
    fail(t, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

 private:
  char peek(std::size_t ahead) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void skip_blank() {
    for (;;) {
      if (pos_ >= text_.size()) return;
      const char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
        at_line_start_ = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        continue;
      }
      if (c == '*' && at_line_start_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      at_line_start_ = false;
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
  bool at_line_start_ = true;
};

/// term* followed by the token that ended the term list.
Token parse_terms(Lexer& lex, std::vector<RawTerm>& terms) {
  Token t = lex.next();
  for (;;) {
    if (t.kind == Token::Kind::Int) {
      const Token var = lex.next();
      if (var.kind != Token::Kind::Ident) Lexer::fail(var, "expected a variable after coefficient");
      terms.push_back({t.value, var.text, var.negated});
      t = lex.next();
      if (t.kind == Token::Kind::Ident) Lexer::fail(t, "non-linear terms are not supported");
    } else if (t.kind == Token::Kind::Ident) {
      terms.push_back({1, t.text, t.negated});
      t = lex.next();
      if (t.kind == Token::Kind::Ident) Lexer::fail(t, "non-linear terms are not supported");
    } else {
      return t;
    }
  }
}

using SignedTerm = std::pair<Lit, Wide>;

/// Shared normal-form pipeline over signed literal terms of ">= rhs".
std::optional<PbConstraint> to_normal_form(const std::vector<SignedTerm>& in, Wide rhs,
                                           const NormalizeOptions& opts) {
  // fold negative literals: c*~x = c - c*x
  std::vector<std::pair<std::uint32_t, Wide>> net;
  for (const auto& [lit, coef] : in) {
    Wide c = coef;
    if (lit.negated()) {
      rhs -= c;
      c = -c;
    }
    auto it = std::find_if(net.begin(), net.end(), [&](const auto& e) { return e.first == lit.var(); });
    if (it == net.end())
      net.emplace_back(lit.var(), c);
    else
      it->second += c;
  }
  PbConstraint out;
  std::vector<Wide> coefs;
  for (const auto& [var, c] : net) {
    if (c == 0) continue;
    if (c > 0) {
      out.terms.push_back({0, Lit::positive(var)});
      coefs.push_back(c);
    } else {
      out.terms.push_back({0, Lit::negative(var)});
      coefs.push_back(-c);
      rhs += -c;
    }
  }
  if (rhs <= 0) return std::nullopt;
  if (opts.saturate)
    for (auto& c : coefs) c = std::min(c, rhs);
  // the threshold takes part in the gcd, so the division below is exact
  auto clamp = [](Wide v) { return static_cast<std::int64_t>(v > kMaxValue ? 1 : v); };
  std::int64_t g = clamp(rhs);
  for (auto c : coefs) g = std::gcd(g, clamp(c));
  Wide total = 0;
  for (auto& c : coefs) {
    if (g > 1) c /= g;
    total += c;
  }
  if (g > 1) rhs = (rhs + g - 1) / g;
  if (total > kMaxValue || rhs > kMaxValue) throw std::overflow_error("constraint coefficients exceed 2^62 after normalization");
  for (std::size_t i = 0; i < coefs.size(); ++i) out.terms[i].coef = static_cast<Int>(coefs[i]);
  out.threshold = static_cast<Int>(rhs);
  return out;
}

}  // namespace

ParsedOpb parse(std::string_view text) {
  ParsedOpb out;
  Lexer lex(text);
  for (;;) {
    std::vector<RawTerm> terms;
    Token first = lex.next();
    if (first.kind == Token::Kind::End) return out;
    if (first.kind == Token::Kind::Min || first.kind == Token::Kind::Max) {
      const Token end = parse_terms(lex, terms);
      if (end.kind != Token::Kind::Semi) Lexer::fail(end, "expected ';' after objective");
      if (out.objective) Lexer::fail(first, "duplicate objective");
      out.objective = std::move(terms);
      continue;
    }
    RawConstraint rc;
    rc.line = first.line;
    Token t = first;
    for (;;) {
      if (t.kind == Token::Kind::Int) {
        const Token var = lex.next();
        if (var.kind != Token::Kind::Ident) Lexer::fail(var, "expected a variable after coefficient");
        rc.terms.push_back({t.value, var.text, var.negated});
      } else if (t.kind == Token::Kind::Ident) {
        rc.terms.push_back({1, t.text, t.negated});
      } else {
        break;
      }
      t = lex.next();
      if (t.kind == Token::Kind::Ident) Lexer::fail(t, "non-linear terms are not supported");
    }
    switch (t.kind) {
      case Token::Kind::Geq: rc.relation = Relation::Geq; break;
      case Token::Kind::Leq: rc.relation = Relation::Leq; break;
      case Token::Kind::Eq: rc.relation = Relation::Eq; break;
      default: Lexer::fail(t, "expected a term or one of >= <= =");
    }
    const Token rhs = lex.next();
    if (rhs.kind != Token::Kind::Int) Lexer::fail(rhs, "expected an integer right-hand side");
    rc.rhs = rhs.value;
    const Token semi = lex.next();
    if (semi.kind != Token::Kind::Semi) Lexer::fail(semi, "expected ';'");
    out.constraints.push_back(std::move(rc));
  }
}

std::uint32_t VarTable::id(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  names_.push_back(name);
  const auto id = static_cast<std::uint32_t>(names_.size());
  ids_.emplace(name, id);
  return id;
}

std::optional<std::uint32_t> VarTable::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<PbConstraint> normalize(const RawConstraint& rc, VarTable& table, const NormalizeOptions& opts) {
  std::vector<SignedTerm> terms;
  terms.reserve(rc.terms.size());
  for (const auto& t : rc.terms) terms.emplace_back(Lit::make(table.id(t.var), t.negated), t.coef);

  std::vector<PbConstraint> out;
  auto emit = [&](bool flip) {
    std::vector<SignedTerm> signed_terms = terms;
    Wide rhs = rc.rhs;
    if (flip) {
      for (auto& st : signed_terms) st.second = -st.second;
      rhs = -rhs;
    }
    if (auto c = to_normal_form(signed_terms, rhs, opts)) out.push_back(std::move(*c));
  };
  if (rc.relation != Relation::Leq) emit(false);
  if (rc.relation != Relation::Geq) emit(true);
  return out;
}

std::vector<PbConstraint> renormalize(const PbConstraint& c, const NormalizeOptions& opts) {
  std::vector<SignedTerm> terms;
  for (const auto& t : c.terms) terms.emplace_back(t.lit, t.coef);
  std::vector<PbConstraint> out;
  if (auto n = to_normal_form(terms, c.threshold, opts)) out.push_back(std::move(*n));
  return out;
}

PbInstance load(std::string_view text, const NormalizeOptions& opts) {
  const ParsedOpb parsed = parse(text);
  PbInstance inst;
  inst.objective_skipped = parsed.objective.has_value();
  for (const auto& rc : parsed.constraints) {
    auto normal = normalize(rc, inst.vars, opts);
    if (normal.empty()) ++inst.dropped_trivial;
    for (auto& c : normal) {
      inst.constraints.push_back(std::move(c));
      inst.source_lines.push_back(rc.line);
    }
  }
  return inst;
}

PbInstance load_file(const std::string& path, const NormalizeOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load(ss.str(), opts);
}

std::string print(const PbInstance& instance) {
  std::ostringstream out;
  out << "* #variable= " << instance.vars.size() << " #constraint= " << instance.constraints.size() << '\n';
  for (const auto& c : instance.constraints) {
    for (const auto& t : c.terms)
      out << '+' << t.coef << ' ' << (t.lit.negated() ? "~" : "") << instance.vars.name(t.lit.var()) << ' ';
    out << ">= " << c.threshold << " ;\n";
  }
  return out.str();
}

bool holds(const RawConstraint& rc, const std::unordered_map<std::string, bool>& assignment) {
  Wide lhs = 0;
  for (const auto& t : rc.terms)
    if (assignment.at(t.var) != t.negated) lhs += t.coef;
  switch (rc.relation) {
    case Relation::Geq: return lhs >= rc.rhs;
    case Relation::Leq: return lhs <= rc.rhs;
    case Relation::Eq: return lhs == rc.rhs;
  }
  return false;
}

}  // namespace pbbase::opb
