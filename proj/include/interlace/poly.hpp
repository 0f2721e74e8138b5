#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace interlace {

using Integer = boost::multiprecision::cpp_int;

// Variables are interned process-wide. Ids are stable for the lifetime of the
// process; only canonical printing consults the names.
using VarId = std::uint32_t;

VarId intern_variable(std::string_view name);
std::string variable_name(VarId id);
bool is_valid_variable_name(std::string_view name);

inline constexpr std::string_view kVarX = "x";
inline constexpr std::string_view kVarY = "y";

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  // 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class DivisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Product of variables with positive exponents; the empty product is 1.
class Monomial {
 public:
  struct Factor {
    VarId var;
    std::uint32_t exp;
    bool operator==(const Factor&) const = default;
  };
  using Factors = boost::container::small_vector<Factor, 4>;

  Monomial() = default;
  static Monomial variable(VarId v, std::uint32_t exp = 1);
  static Monomial variable(std::string_view name, std::uint32_t exp = 1);

  const Factors& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  std::uint32_t degree(VarId v) const;
  std::uint64_t total_degree() const;

  Monomial operator*(const Monomial& other) const;
  // Returns true and sets `out` when `other` divides *this.
  bool divide(const Monomial& other, Monomial& out) const;

  bool operator==(const Monomial&) const = default;

  // Lexicographic monomial order over variable ids (smaller id is more
  // significant). Compatible with multiplication.
  static int compare(const Monomial& a, const Monomial& b);

 private:
  Factors factors_;  // sorted by var, exps > 0
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(a, b) < 0;
  }
};

class Poly {
 public:
  using Term = std::pair<Monomial, Integer>;

  Poly() = default;
  Poly(long long c);  // NOLINT: integers promote to constants
  Poly(const Integer& c);  // NOLINT
  static Poly variable(std::string_view name);
  static Poly monomial(const Monomial& m, const Integer& c = 1);
  static Poly from_terms(std::vector<Term> terms);

  static Poly x() { return variable(kVarX); }
  static Poly y() { return variable(kVarY); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  // Terms in internal monomial order (ascending), nonzero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const Monomial& m) const;
  std::vector<VarId> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly pow(std::uint32_t e) const;

  bool operator==(const Poly&) const = default;

  // Deterministic text form: ascending total degree, ties broken by the
  // alphabetically sorted (name, exponent) lists. Parses back to *this.
  std::string to_string() const;

 private:
  static Poly merge(const Poly& a, const Poly& b, bool negate_b);
  std::vector<Term> terms_;
};

Poly parse_poly(std::string_view text);
std::string canonical_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const Poly& p);

// Simultaneous substitution; unbound variables pass through.
Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings);
Poly substitute(const Poly& p, const std::map<VarId, Poly>& bindings);

// Returns c with c * d == p; throws DivisionError if none exists.
Poly exact_div(const Poly& p, const Poly& d);

Integer coefficient_of(const Poly& p, const Monomial& m);

// Frequently used factors.
const Poly& x_minus_1();
const Poly& y_minus_1();

}  // namespace interlace
