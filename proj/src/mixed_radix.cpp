#include "pbbase/mixed_radix.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pbbase {

Int saturating_mul(Int a, Int b) noexcept {
  Int p;
  if (__builtin_mul_overflow(a, b, &p)) return std::numeric_limits<Int>::max();
  return p;
}

Base::Base(std::vector<Int> radices) : radices_(std::move(radices)) {
  for (Int r : radices_) {
    if (r < 2) throw std::invalid_argument("base radix must be >= 2, got " + std::to_string(r));
    product_ = saturating_mul(product_, r);
  }
}

Base Base::extended(Int radix) const {
  if (radix < 2) throw std::invalid_argument("base radix must be >= 2, got " + std::to_string(radix));
  Base b;
  b.radices_.reserve(radices_.size() + 1);
  b.radices_ = radices_;
  b.radices_.push_back(radix);
  b.product_ = saturating_mul(product_, radix);
  return b;
}

bool Base::is_prefix_of(const Base& other) const noexcept {
  return radices_.size() <= other.radices_.size() &&
         std::equal(radices_.begin(), radices_.end(), other.radices_.begin());
}

std::string Base::to_string() const { return "<" + to_csv() + ">"; }

std::string Base::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(radices_[i]);
  }
  return out;
}

namespace {

std::vector<Int> parse_int_list(const std::string& text, const char* what) {
  std::vector<Int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (in.eof() && out.empty()) break;
      throw std::invalid_argument(std::string("empty element in ") + what + " '" + text + "'");
    }
    const auto last = token.find_last_not_of(" \t");
    const std::string_view digits(token.data() + first, last - first + 1);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw std::invalid_argument(std::string("bad integer '") + std::string(digits) + "' in " + what);
    out.push_back(v);
  }
  return out;
}

}  // namespace

Base parse_base(const std::string& text) { return Base(parse_int_list(text, "base")); }

std::vector<Int> weights(const Base& base) {
  std::vector<Int> w(base.size() + 1);
  w[0] = 1;
  for (std::size_t i = 0; i < base.size(); ++i) w[i + 1] = saturating_mul(w[i], base[i]);
  return w;
}

DigitVector digits_of(Int value, const Base& base) {
  if (value < 0) throw std::invalid_argument("digits_of: negative value");
  DigitVector d(base.size() + 1);
  Int q = value;
  for (std::size_t i = 0; i < base.size(); ++i) {
    d[i] = q % base[i];
    q /= base[i];
  }
  d[base.size()] = q;
  return d;
}

Int value_of(std::span<const Int> digits, const Base& base) {
  if (digits.size() != base.size() + 1)
    throw std::invalid_argument("value_of: digit count does not match base length + 1");
  const auto w = weights(base);
  Int v = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    v += saturating_mul(digits[i], w[i]);
  }
  return v;
}

Multiset::Multiset(std::vector<Int> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("multiset must be non-empty");
  std::sort(elements_.begin(), elements_.end());
  if (elements_.front() < 1) throw std::invalid_argument("multiset elements must be positive");
  if (elements_.back() > kMaxValue) throw std::invalid_argument("multiset element exceeds 2^62");
  for (Int v : elements_) {
    if (!distinct_.empty() && distinct_.back().value == v)
      ++distinct_.back().count;
    else
      distinct_.push_back({v, 1});
    if (sum_ > kMaxValue - v) throw std::invalid_argument("multiset sum exceeds 2^62");
    sum_ += v;
  }
}

std::string Multiset::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements_[i]);
  }
  return out + "}";
}

Multiset parse_multiset(const std::string& text) { return Multiset(parse_int_list(text, "multiset")); }

std::vector<Int> DigitMatrix::column_sums() const {
  std::vector<Int> sums(columns(), 0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
  return sums;
}

Int DigitMatrix::msd_sum() const {
  Int s = 0;
  for (const auto& row : rows) s += row.back();
  return s;
}

DigitMatrix digit_matrix(const Multiset& set, const Base& base) {
  DigitMatrix m{base, {}};
  m.rows.reserve(set.size());
  for (Int v : set.elements()) m.rows.push_back(digits_of(v, base));
  return m;
}

bool is_redundant(const Multiset& set, const Base& base) { return base.product() > set.max(); }

Base merge_adjacent(const Base& base, std::size_t position) {
  if (position + 1 >= base.size()) throw std::out_of_range("merge_adjacent: position out of range");
  std::vector<Int> r(base.radices().begin(), base.radices().end());
  r[position] = saturating_mul(r[position], r[position + 1]);
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(position) + 1);
  return Base(std::move(r));
}

}  // namespace pbbase
