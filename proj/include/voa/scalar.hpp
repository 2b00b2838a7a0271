#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace voa {

using Rational = mpq_class;

class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Process-wide registry of parameter names. Indices are stable for the
// lifetime of the process.
namespace params {
constexpr std::size_t kMax = 12;
std::size_t index(std::string_view name);
const std::string& name(std::size_t i);
bool known(std::string_view name);
}  // namespace params

struct Exponents {
  std::array<std::uint16_t, params::kMax> e{};

  unsigned total() const {
    unsigned t = 0;
    for (auto x : e) t += x;
    return t;
  }
  bool is_one() const { return total() == 0; }
  bool divides(const Exponents& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Exponents operator*(const Exponents& o) const {
    Exponents r;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  Exponents operator/(const Exponents& o) const {
    Exponents r;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  bool operator==(const Exponents& o) const { return e == o.e; }
};

// graded lex: true if a precedes b in descending order (a is "bigger")
bool grlex_greater(const Exponents& a, const Exponents& b);

// Multivariate polynomial over Q. Terms are kept sorted by descending
// graded-lex order with no zero coefficients.
class Poly {
 public:
  using Term = std::pair<Exponents, Rational>;

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly var(std::size_t idx, unsigned power = 1);
  static Poly from_terms(std::vector<Term> terms);  // sorts and combines

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  Rational constant_value() const;  // requires is_constant()
  const std::vector<Term>& terms() const { return terms_; }
  const Rational& leading_coeff() const { return terms_.front().second; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly monic() const;  // leading coefficient 1 (zero stays zero)

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // exact division; throws MathError if not exact
  Poly divide_exact(const Poly& d) const;

  unsigned degree_in(std::size_t v) const;
  std::uint32_t var_mask() const;
  // coefficients of powers of v: result[i] is the coefficient of v^i
  std::vector<Poly> coeffs_in(std::size_t v) const;
  static Poly from_coeffs_in(std::size_t v, const std::vector<Poly>& c);

  // substitute rationals for the bound variables
  Poly substitute(const std::map<std::size_t, Rational>& values) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic (or zero when both zero)

// Res_v(a, b), the Sylvester determinant in the variable v
Poly resultant(const Poly& a, const Poly& b, std::size_t v);
// distinct rational roots in ascending order of a univariate polynomial;
// throws MathError for the zero polynomial or more than one variable
std::vector<Rational> rational_roots(const Poly& p);

// Exact element of Q(params). Constants avoid polynomial machinery.
class Scalar {
 public:
  Scalar() : c_(0) {}
  Scalar(long v) : c_(v) {}  // NOLINT
  Scalar(int v) : c_(v) {}   // NOLINT
  Scalar(const Rational& v) : c_(v) {}  // NOLINT
  Scalar(long num, long den);
  static Scalar param(std::string_view name);
  static Scalar fraction(const Poly& num, const Poly& den);
  static Scalar parse(std::string_view text);

  bool is_zero() const { return !f_ && sgn(c_) == 0; }
  bool is_one() const { return !f_ && c_ == 1; }
  bool is_constant() const { return !f_; }
  const Rational& value() const;  // throws if not constant
  Poly numerator() const;
  Poly denominator() const;
  std::uint32_t var_mask() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar pow(int e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar specialize(const std::map<std::string, Rational>& bindings) const;
  Scalar specialize(const std::map<std::size_t, Rational>& bindings) const;

  // canonical text; parse(str()) == *this
  std::string str() const;
  // true when str() needs brackets to be used as a factor
  bool is_atomic_rational() const { return !f_; }

 private:
  struct Frac {
    Poly num, den;
  };
  Rational c_;
  std::shared_ptr<const Frac> f_;

  static Scalar make(Poly num, Poly den, bool reduce);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar binomial(long n, long k);  // n may be negative
Rational falling(long n, long k);  // n (n-1) ... (n-k+1)

// parse "k=-1,c=-15"
std::map<std::string, Rational> parse_bindings(std::string_view text);
Rational parse_rational(std::string_view text);

}  // namespace voa
