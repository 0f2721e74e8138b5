#include "interlace/poly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace interlace {

namespace {

struct VariableRegistry {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

VariableRegistry& registry() {
  static VariableRegistry r;
  return r;
}

}  // namespace

bool is_valid_variable_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

VarId intern_variable(std::string_view name) {
  if (!is_valid_variable_name(name)) {
    throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  }
  auto& r = registry();
  std::lock_guard lock(r.mu);
  std::string key(name);
  if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
  auto id = static_cast<VarId>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(std::move(key), id);
  return id;
}

std::string variable_name(VarId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.names.at(id);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(VarId v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({v, exp});
  return m;
}

Monomial Monomial::variable(std::string_view name, std::uint32_t exp) {
  return variable(intern_variable(name), exp);
}

std::uint32_t Monomial::degree(VarId v) const {
  for (const auto& f : factors_) {
    if (f.var == v) return f.exp;
  }
  return 0;
}

std::uint64_t Monomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& f : factors_) d += f.exp;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() && j != other.factors_.end()) {
    if (i->var == j->var) {
      out.factors_.push_back({i->var, i->exp + j->exp});
      ++i;
      ++j;
    } else if (i->var < j->var) {
      out.factors_.push_back(*i++);
    } else {
      out.factors_.push_back(*j++);
    }
  }
  out.factors_.insert(out.factors_.end(), i, factors_.end());
  out.factors_.insert(out.factors_.end(), j, other.factors_.end());
  return out;
}

bool Monomial::divide(const Monomial& other, Monomial& out) const {
  Monomial q;
  auto i = factors_.begin();
  for (const auto& f : other.factors_) {
    while (i != factors_.end() && i->var < f.var) q.factors_.push_back(*i++);
    if (i == factors_.end() || i->var != f.var || i->exp < f.exp) return false;
    if (i->exp > f.exp) q.factors_.push_back({f.var, i->exp - f.exp});
    ++i;
  }
  q.factors_.insert(q.factors_.end(), i, factors_.end());
  out = std::move(q);
  return true;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->var != j->var) {
      // The side holding the smaller variable has a positive exponent where
      // the other has zero.
      return i->var < j->var ? 1 : -1;
    }
    if (i->exp != j->exp) return i->exp < j->exp ? -1 : 1;
    ++i;
    ++j;
  }
  if (i != a.factors_.end()) return 1;
  if (j != b.factors_.end()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long long c) {
  if (c != 0) terms_.emplace_back(Monomial{}, Integer(c));
}

Poly::Poly(const Integer& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Poly Poly::variable(std::string_view name) { return monomial(Monomial::variable(name)); }

Poly Poly::monomial(const Monomial& m, const Integer& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::compare(a.first, b.first) < 0;
  });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.front().first.is_unit() && terms_.front().second == 1;
}

Integer Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return Monomial::compare(t.first, key) < 0;
  });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.push_back(f.var);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Poly Poly::merge(const Poly& a, const Poly& b, bool negate_b) {
  Poly out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  auto push_b = [&](const Term& t) {
    out.terms_.emplace_back(t.first, negate_b ? Integer(-t.second) : t.second);
  };
  while (i != a.terms_.end() && j != b.terms_.end()) {
    int c = Monomial::compare(i->first, j->first);
    if (c < 0) {
      out.terms_.push_back(*i++);
    } else if (c > 0) {
      push_b(*j++);
    } else {
      Integer s = negate_b ? Integer(i->second - j->second) : Integer(i->second + j->second);
      if (s != 0) out.terms_.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i != a.terms_.end(); ++i) out.terms_.push_back(*i);
  for (; j != b.terms_.end(); ++j) push_b(*j);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  return *this = merge(*this, o, false);
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  return *this = merge(*this, o, true);
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  if (small.size() > 4) {
    std::vector<Poly::Term> all;
    all.reserve(small.size() * big.size());
    for (const auto& [sm, sc] : small.terms_) {
      for (const auto& [bm, bc] : big.terms_) all.emplace_back(sm * bm, sc * bc);
    }
    return Poly::from_terms(std::move(all));
  }
  // Multiplying by a single term preserves the monomial order, so each row is
  // already sorted; merge rows one at a time.
  Poly acc;
  for (const auto& [sm, sc] : small.terms_) {
    Poly row;
    row.terms_.reserve(big.terms_.size());
    for (const auto& [bm, bc] : big.terms_) row.terms_.emplace_back(sm * bm, sc * bc);
    acc += row;
  }
  return acc;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::pow(std::uint32_t e) const {
  Poly result = 1;
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

namespace {

using NamedFactors = std::vector<std::pair<std::string, std::uint32_t>>;

NamedFactors named(const Monomial& m) {
  NamedFactors out;
  out.reserve(m.factors().size());
  for (const auto& f : m.factors()) out.emplace_back(variable_name(f.var), f.exp);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  struct Row {
    std::uint64_t degree;
    NamedFactors factors;
    const Integer* coeff;
  };
  std::vector<Row> rows;
  rows.reserve(terms_.size());
  for (const auto& [m, c] : terms_) rows.push_back({m.total_degree(), named(m), &c});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.factors < b.factors;
  });

  std::ostringstream out;
  bool first = true;
  for (const auto& row : rows) {
    Integer c = *row.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (c != 1 || row.factors.empty()) {
      out << c;
      need_star = true;
    }
    for (const auto& [name, exp] : row.factors) {
      if (need_star) out << '*';
      out << name;
      if (exp != 1) out << '^' << exp;
      need_star = true;
    }
  }
  return out.str();
}

std::string canonical_string(const Poly& p) { return p.to_string(); }

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// Parser: precedence climbing over + - (lowest), * , unary -, ^ (highest).

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    Poly p = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::optional<char> peek() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  Poly parse_sum() {
    Poly acc = parse_product();
    while (auto c = peek()) {
      if (*c != '+' && *c != '-') break;
      ++pos_;
      Poly rhs = parse_product();
      if (*c == '+') acc += rhs; else acc -= rhs;
    }
    return acc;
  }

  Poly parse_product() {
    Poly acc = parse_unary();
    while (auto c = peek()) {
      if (*c != '*') break;
      ++pos_;
      acc *= parse_unary();
    }
    return acc;
  }

  Poly parse_unary() {
    auto c = peek();
    if (c && *c == '-') {
      ++pos_;
      return -parse_unary();
    }
    if (c && *c == '+') {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  Poly parse_power() {
    Poly base = parse_atom();
    auto c = peek();
    if (!c || *c != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer literal");
    unsigned long long e = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      e = e * 10 + static_cast<unsigned>(text_[i] - '0');
      if (e > 100000) {
        pos_ = start;
        fail("exponent too large");
      }
    }
    if (auto next = peek(); next && *next == '^') fail("chained exponents are ambiguous; use parentheses");
    return base.pow(static_cast<std::uint32_t>(e));
  }

  Poly parse_atom() {
    auto c = peek();
    if (!c) fail("unexpected end of expression");
    auto uc = static_cast<unsigned char>(*c);
    if (*c == '(') {
      ++pos_;
      Poly inner = parse_sum();
      auto close = peek();
      if (!close || *close != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(uc)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        fail("implicit multiplication is not supported");
      }
      return Poly(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(uc) || *c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Poly::variable(text_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected character '") + *c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------

Poly substitute(const Poly& p, const std::map<VarId, Poly>& bindings) {
  if (bindings.empty()) return p;
  std::map<std::pair<VarId, std::uint32_t>, Poly> powers;
  auto power_of = [&](VarId v, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(v, e);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    return powers.emplace(key, bindings.at(v).pow(e)).first->second;
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    Poly factor = Poly(c);
    for (const auto& f : m.factors()) {
      if (bindings.count(f.var)) {
        factor *= power_of(f.var, f.exp);
      } else {
        rest = rest * Monomial::variable(f.var, f.exp);
      }
    }
    out += factor * Poly::monomial(rest);
  }
  return out;
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings) {
  std::map<VarId, Poly> by_id;
  for (const auto& [name, value] : bindings) by_id.emplace(intern_variable(name), value);
  return substitute(p, by_id);
}

Poly exact_div(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw DivisionError("division by the zero polynomial");
  if (d.is_one()) return p;
  const auto& [lead_m, lead_c] = d.terms().back();
  Poly rem = p;
  std::vector<Poly::Term> quotient;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.terms().back();
    Monomial qm;
    if (!rm.divide(lead_m, qm)) throw DivisionError("polynomial is not divisible");
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(rc, lead_c, q, r);
    if (r != 0) throw DivisionError("polynomial is not divisible");
    Poly t = Poly::monomial(qm, q);
    quotient.emplace_back(qm, q);
    rem -= t * d;
  }
  return Poly::from_terms(std::move(quotient));
}

Integer coefficient_of(const Poly& p, const Monomial& m) { return p.coefficient(m); }

const Poly& x_minus_1() {
  static const Poly p = Poly::x() - 1;
  return p;
}

const Poly& y_minus_1() {
  static const Poly p = Poly::y() - 1;
  return p;
}

}  // namespace interlace
