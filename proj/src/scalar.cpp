#include "voa/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <mutex>
#include <ostream>
#include <sstream>

namespace voa {

namespace params {
namespace {
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
std::vector<std::string>& registry() {
  static std::vector<std::string> names;
  return names;
}
}  // namespace

std::size_t index(std::string_view name) {
  std::lock_guard lock(registry_mutex());
  auto& r = registry();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == name) return i;
  if (r.size() >= kMax) throw MathError("too many distinct parameters (max 12)");
  r.emplace_back(name);
  return r.size() - 1;
}

const std::string& name(std::size_t i) {
  std::lock_guard lock(registry_mutex());
  return registry().at(i);
}

bool known(std::string_view name) {
  std::lock_guard lock(registry_mutex());
  for (auto& n : registry())
    if (n == name) return true;
  return false;
}
}  // namespace params

bool grlex_greater(const Exponents& a, const Exponents& b) {
  unsigned ta = a.total(), tb = b.total();
  if (ta != tb) return ta > tb;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace_back(Exponents{}, c);
}

Poly Poly::var(std::size_t idx, unsigned power) {
  Poly p;
  Exponents e;
  e.e.at(idx) = static_cast<std::uint16_t>(power);
  p.terms_.emplace_back(e, Rational(1));
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!terms_[0].first.is_one()) throw MathError("polynomial is not constant");
  return terms_[0].second;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin(), j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    if (i->first == j->first) {
      Rational s = i->second + j->second;
      if (sgn(s) != 0) r.terms_.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    } else if (grlex_greater(i->first, j->first)) {
      r.terms_.push_back(*i++);
    } else {
      r.terms_.push_back(*j++);
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.is_constant()) return scaled(o.terms_[0].second);
  if (is_constant()) return o.scaled(terms_[0].second);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) out.emplace_back(a.first * b.first, a.second * b.second);
  return from_terms(std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  if (leading_coeff() == 1) return *this;
  return scaled(1 / leading_coeff());
}

Poly Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw MathError("polynomial division by zero");
  if (d.is_constant()) return scaled(1 / d.terms_[0].second);
  std::vector<Term> q;
  Poly r = *this;
  const auto& lt = d.terms_.front();
  while (!r.is_zero()) {
    const auto& rt = r.terms_.front();
    if (!lt.first.divides(rt.first)) throw MathError("inexact polynomial division");
    Poly m;
    m.terms_.emplace_back(rt.first / lt.first, rt.second / lt.second);
    q.push_back(m.terms_[0]);
    r = r - m * d;
  }
  Poly out;
  out.terms_ = std::move(q);
  return out;
}

unsigned Poly::degree_in(std::size_t v) const {
  unsigned d = 0;
  for (auto& t : terms_) d = std::max<unsigned>(d, t.first.e[v]);
  return d;
}

std::uint32_t Poly::var_mask() const {
  std::uint32_t m = 0;
  for (auto& t : terms_)
    for (std::size_t i = 0; i < params::kMax; ++i)
      if (t.first.e[i]) m |= 1u << i;
  return m;
}

std::vector<Poly> Poly::coeffs_in(std::size_t v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (auto& t : terms_) {
    Exponents e = t.first;
    unsigned i = e.e[v];
    e.e[v] = 0;
    buckets[i].emplace_back(e, t.second);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coeffs_in(std::size_t v, const std::vector<Poly>& c) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (auto& t : c[i].terms_) {
      Exponents e = t.first;
      e.e[v] = static_cast<std::uint16_t>(e.e[v] + i);
      out.emplace_back(e, t.second);
    }
  return from_terms(std::move(out));
}

Poly Poly::substitute(const std::map<std::size_t, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    Exponents e = t.first;
    Rational c = t.second;
    for (auto& [v, val] : values) {
      unsigned p = e.e[v];
      if (!p) continue;
      Rational pw = 1;
      for (unsigned i = 0; i < p; ++i) pw *= val;
      c *= pw;
      e.e[v] = 0;
    }
    if (sgn(c) != 0) out.emplace_back(e, c);
  }
  return from_terms(std::move(out));
}

namespace {
std::string monomial_str(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.e.size(); ++i) {
    if (!e.e[i]) continue;
    if (!s.empty()) s += "*";
    s += params::name(i);
    if (e.e[i] > 1) s += "^" + std::to_string(e.e[i]);
  }
  return s;
}
}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [e, c] : terms_) {
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    Rational a = abs(c);
    if (e.is_one()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += monomial_str(e);
    }
  }
  return s;
}

// ---------------------------------------------------------------- gcd

namespace {

using Dense = std::vector<Rational>;  // index = power

Dense to_dense(const Poly& p, std::size_t v) {
  Dense d(p.degree_in(v) + 1);
  for (auto& t : p.terms()) d[t.first.e[v]] = t.second;
  return d;
}

Poly from_dense(const Dense& d, std::size_t v) {
  std::vector<Poly::Term> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) == 0) continue;
    Exponents e;
    e.e[v] = static_cast<std::uint16_t>(i);
    out.emplace_back(e, d[i]);
  }
  return Poly::from_terms(std::move(out));
}

void trim(Dense& d) {
  while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
}

Poly univariate_gcd(const Poly& a, const Poly& b, std::size_t v) {
  Dense x = to_dense(a, v), y = to_dense(b, v);
  trim(x);
  trim(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    // x <- x mod y
    Rational inv = 1 / y.back();
    while (x.size() >= y.size() && !x.empty()) {
      Rational f = x.back() * inv;
      std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[j + shift] -= f * y[j];
      x.pop_back();
      trim(x);
    }
    std::swap(x, y);
  }
  return from_dense(x, v).monic();
}

Poly content_in(const Poly& p, std::size_t v) {
  auto cs = p.coeffs_in(v);
  Poly g;
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly prem(const Poly& a, const Poly& b, std::size_t v) {
  auto A = a.coeffs_in(v);
  auto B = b.coeffs_in(v);
  const Poly lcb = B.back();
  while (!A.empty() && A.size() >= B.size()) {
    std::size_t shift = A.size() - B.size();
    Poly lca = A.back();
    for (auto& c : A) c = c * lcb;
    for (std::size_t j = 0; j < B.size(); ++j) A[j + shift] = A[j + shift] - lca * B[j];
    while (!A.empty() && A.back().is_zero()) A.pop_back();
  }
  return Poly::from_coeffs_in(v, A);
}

Poly primitive_in(const Poly& p, std::size_t v) { return p.divide_exact(content_in(p, v)); }

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  std::uint32_t ma = a.var_mask(), mb = b.var_mask(), m = ma | mb;
  std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
  if (std::popcount(m) == 1) return univariate_gcd(a, b, v);
  if (!(ma & (1u << v))) return gcd(a, content_in(b, v));
  if (!(mb & (1u << v))) return gcd(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = a.divide_exact(ca), pb = b.divide_exact(cb);
  Poly g = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Poly h;
  for (;;) {
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      h = primitive_in(pb, v);
      break;
    }
    if (r.degree_in(v) == 0) {
      h = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return (g * h).monic();
}

Poly resultant(const Poly& a, const Poly& b, std::size_t v) {
  auto A = a.coeffs_in(v), B = b.coeffs_in(v);
  while (!A.empty() && A.back().is_zero()) A.pop_back();
  while (!B.empty() && B.back().is_zero()) B.pop_back();
  if (A.empty() || B.empty()) return Poly();
  std::size_t m = A.size() - 1, n = B.size() - 1, N = m + n;
  if (N == 0) return Poly(1);
  // rows 0..n-1 carry a, rows n..N-1 carry b; leading coefficients first
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) M[i][i + j] = A[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) M[n + i][i + j] = B[n - j];
  // Bareiss elimination
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < N && M[r][k].is_zero()) ++r;
      if (r == N) return Poly();
      std::swap(M[k], M[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divide_exact(prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  return negate ? -M[N - 1][N - 1] : M[N - 1][N - 1];
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> f;
  for (mpz_class p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (auto& [p, e] : f) {
    std::size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p) {
  if (p.is_zero()) throw MathError("every number is a root of the zero polynomial");
  if (std::popcount(p.var_mask()) > 1) throw MathError("rational_roots needs a univariate polynomial, got " + p.str());
  if (p.is_constant()) return {};
  std::size_t v = static_cast<std::size_t>(std::countr_zero(p.var_mask()));
  Dense d = to_dense(p, v);
  std::vector<Rational> out;
  std::size_t low = 0;
  while (sgn(d[low]) == 0) ++low;
  if (low > 0) out.push_back(0);
  d.erase(d.begin(), d.begin() + static_cast<long>(low));
  mpz_class lcm = 1;
  for (auto& c : d) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (auto& c : d) z.push_back(mpz_class(c.get_num() * (lcm / c.get_den())));
  auto eval = [&](const Rational& x) {
    Rational acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  };
  if (z.size() > 1) {
    auto ps = divisors(z.front()), qs = divisors(z.back());
    for (auto& a : ps)
      for (auto& b : qs)
        for (int s : {1, -1}) {
          Rational x(mpz_class(s * a), b);
          x.canonicalize();
          if (sgn(eval(x)) == 0) out.push_back(x);
        }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(long num, long den) {
  if (den == 0) throw MathError("division by zero");
  c_ = Rational(num, den);
  c_.canonicalize();
}

Scalar Scalar::param(std::string_view name) {
  return make(Poly::var(params::index(name)), Poly(1), false);
}

Scalar Scalar::fraction(const Poly& num, const Poly& den) { return make(num, den, true); }

Scalar Scalar::make(Poly num, Poly den, bool reduce) {
  if (den.is_zero()) throw MathError("division by zero");
  if (num.is_zero()) return Scalar();
  if (reduce && !den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = num.divide_exact(g);
      den = den.divide_exact(g);
    }
  }
  Rational lc = den.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  Scalar s;
  if (den.is_constant() && num.is_constant()) {
    s.c_ = num.constant_value();
    return s;
  }
  s.f_ = std::make_shared<const Frac>(Frac{std::move(num), std::move(den)});
  return s;
}

const Rational& Scalar::value() const {
  if (f_) throw MathError("scalar " + str() + " is not a constant");
  return c_;
}

Poly Scalar::numerator() const { return f_ ? f_->num : Poly(c_); }
Poly Scalar::denominator() const { return f_ ? f_->den : Poly(1); }
std::uint32_t Scalar::var_mask() const { return f_ ? (f_->num.var_mask() | f_->den.var_mask()) : 0; }

Scalar Scalar::operator-() const {
  if (!f_) return Scalar(Rational(-c_));
  Scalar s;
  s.f_ = std::make_shared<const Frac>(Frac{-f_->num, f_->den});
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (!f_ && !o.f_) return Scalar(Rational(c_ + o.c_));
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (!f_) return make(o.f_->num + o.f_->den.scaled(c_), o.f_->den, false);
  if (!o.f_) return make(f_->num + f_->den.scaled(o.c_), f_->den, false);
  if (f_->den == o.f_->den) return make(f_->num + o.f_->num, f_->den, true);
  Poly g = gcd(f_->den, o.f_->den);
  Poly d1 = f_->den.divide_exact(g), d2 = o.f_->den.divide_exact(g);
  return make(f_->num * d2 + o.f_->num * d1, f_->den * d2, true);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (!f_ && !o.f_) return Scalar(Rational(c_ * o.c_));
  if (is_zero() || o.is_zero()) return Scalar();
  if (!f_) return make(o.f_->num.scaled(c_), o.f_->den, false);
  if (!o.f_) return make(f_->num.scaled(o.c_), f_->den, false);
  Poly g1 = gcd(f_->num, o.f_->den), g2 = gcd(o.f_->num, f_->den);
  Poly n1 = f_->num.divide_exact(g1), d2 = o.f_->den.divide_exact(g1);
  Poly n2 = o.f_->num.divide_exact(g2), d1 = f_->den.divide_exact(g2);
  return make(n1 * n2, d1 * d2, false);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw MathError("division by zero");
  if (!o.f_) return *this * Scalar(Rational(1 / o.c_));
  Scalar inv = make(o.f_->den, o.f_->num, false);
  return *this * inv;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!f_ && !o.f_) return c_ == o.c_;
  if (!f_ || !o.f_) return false;
  return f_->num == o.f_->num && f_->den == o.f_->den;
}

Scalar Scalar::specialize(const std::map<std::string, Rational>& bindings) const {
  if (!f_) return *this;
  std::map<std::size_t, Rational> idx;
  for (auto& [n, v] : bindings)
    if (params::known(n)) idx.emplace(params::index(n), v);
  return specialize(idx);
}

Scalar Scalar::specialize(const std::map<std::size_t, Rational>& bindings) const {
  if (!f_) return *this;
  Poly num = f_->num.substitute(bindings);
  Poly den = f_->den.substitute(bindings);
  if (den.is_zero()) {
    std::string at;
    for (auto& [i, v] : bindings) {
      if (!at.empty()) at += ",";
      at += params::name(i) + "=" + v.get_str();
    }
    throw MathError("pole: denominator " + f_->den.str() + " vanishes at " + at);
  }
  return make(std::move(num), std::move(den), true);
}

std::string Scalar::str() const {
  if (!f_) return c_.get_str();
  const Poly& n = f_->num;
  const Poly& d = f_->den;
  if (d.is_constant()) return n.str();
  std::string ns = n.terms().size() > 1 ? "(" + n.str() + ")" : n.str();
  return ns + "/(" + d.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Rational falling(long n, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= n - i;
  return r;
}

Scalar binomial(long n, long k) {
  if (k < 0) return Scalar();
  Rational r = falling(n, k);
  for (long i = 2; i <= k; ++i) r /= i;
  return Scalar(r);
}

// ---------------------------------------------------------------- parsing

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse_all() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("scalar: " + msg + " at column " + std::to_string(pos_ + 1), 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar b = primary();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(st, pos_ - st)));
      if (neg && b.is_zero()) fail("division by zero");
      return b.pow(neg ? -e : e);
    }
    return b;
  }
  Scalar primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(Rational(mpz_class(std::string(s_.substr(st, pos_ - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Scalar::param(s_.substr(st, pos_ - st));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse_all(); }

Rational parse_rational(std::string_view text) {
  Scalar s = Scalar::parse(text);
  if (!s.is_constant()) throw ParseError("expected a rational number, got '" + std::string(text) + "'", 1, 1);
  return s.value();
}

std::map<std::string, Rational> parse_bindings(std::string_view text) {
  std::map<std::string, Rational> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("binding '" + std::string(item) + "' lacks '='", 1, pos + 1);
    std::string key(item.substr(0, eq));
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    out[key] = parse_rational(item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

}  // namespace voa
