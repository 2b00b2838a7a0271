#include "voa/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace voa {

namespace {
const Expr kZero;

Monomial tail(const Monomial& m) { return Monomial(m.begin() + 1, m.end()); }

Monomial prepend(Factor f, const Monomial& m) {
  Monomial r;
  r.reserve(m.size() + 1);
  r.push_back(f);
  r.insert(r.end(), m.begin(), m.end());
  return r;
}

// (∂^d a)_(-1-j) = (1/j!) (∂^{d+j} a)_(-1)
Scalar inv_factorial(long j) {
  mpz_class f = 1;
  for (long i = 2; i <= j; ++i) f *= i;
  return Scalar(Rational(mpz_class(1), f));
}
}  // namespace

Algebra::Algebra(Presentation p) : pres_(std::move(p)) {
  gens_ = pres_.generators;
  std::set<std::string> seen;
  for (auto& g : gens_) {
    if (!seen.insert(g.name).second) throw ValidationError("duplicate generator '" + g.name + "'");
    if (sgn(g.weight) <= 0)
      throw ValidationError("generator '" + g.name + "' must have positive weight in the grading");
    for (auto& [c, _] : g.charges)
      if (std::find(charge_names_.begin(), charge_names_.end(), c) == charge_names_.end())
        charge_names_.push_back(c);
  }
  std::sort(charge_names_.begin(), charge_names_.end());
  std::stable_sort(gens_.begin(), gens_.end(), [](const GeneratorSymbol& a, const GeneratorSymbol& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.name < b.name;
  });
  if (gens_.size() >= 0xFFFF) throw ValidationError("too many generators");
  mpz_class lcm = 1;
  for (auto& g : gens_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), g.weight.get_den_mpz_t());
  unit_ = lcm.get_si();
  for (auto& g : gens_) {
    Rational w = g.weight * unit_;
    wunits_.push_back(mpz_class(w.get_num()).get_si());
  }
  pairs_.resize(gens_.size() * gens_.size());
  for (auto& e : pres_.ope) {
    auto a = rank_of(e.a), b = rank_of(e.b);
    if (!a) throw ValidationError("ope at line " + std::to_string(e.line) + ": unknown generator '" + e.a + "'");
    if (!b) throw ValidationError("ope at line " + std::to_string(e.line) + ": unknown generator '" + e.b + "'");
    auto& slot = pairs_[*a * gens_.size() + *b];
    if (slot.raw && !slot.reversed)
      throw ValidationError("ope " + e.a + " " + e.b + " given twice");
    slot.raw = &e;
    slot.reversed = false;
    auto& rev = pairs_[*b * gens_.size() + *a];
    if (!rev.raw) {
      rev.raw = &e;
      rev.reversed = true;
    }
  }
}

std::optional<unsigned> Algebra::rank_of(std::string_view name) const {
  for (unsigned i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

unsigned Algebra::rank(std::string_view name) const {
  auto r = rank_of(name);
  if (!r) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  return *r;
}

Expr Algebra::gen(std::string_view name, unsigned deriv) const {
  return Expr(Monomial{make_factor(rank(name), deriv)}, Scalar(1));
}

bool Algebra::has_field(const std::string& name) const { return pres_.is_field(name); }

const Expr& Algebra::field(const std::string& name) const {
  std::lock_guard lock(table_mutex_);
  auto it = field_cache_.find(name);
  if (it != field_cache_.end()) return it->second;
  for (auto& [f, raw] : pres_.fields) {
    if (f != name) continue;
    if (field_state_[name] == 1) throw ValidationError("field '" + name + "' is defined in terms of itself");
    field_state_[name] = 1;
    Expr v = eval(raw);
    field_state_[name] = 2;
    return field_cache_.emplace(name, std::move(v)).first->second;
  }
  throw std::invalid_argument("unknown field '" + name + "'");
}

Expr Algebra::eval(const RawExpr& r) const {
  RawEvaluator<Expr> ev;
  ev.vacuum = [this] { return vacuum(); };
  ev.name = [this](const std::string& n, const RawExpr& at) -> Expr {
    if (rank_of(n)) return gen(n);
    if (has_field(n)) return field(n);
    throw ParseError("line " + std::to_string(at.line) + ", column " + std::to_string(at.column) +
                         ": unknown field '" + n + "'",
                     at.line, at.column);
  };
  ev.deriv = [this](const Expr& e, long j) { return deriv(e, static_cast<unsigned>(j)); };
  ev.normal = [this](const Expr& a, const Expr& b) { return normal(a, b); };
  ev.exp = [](long, const std::string& n, const RawExpr& at) -> Expr {
    throw ParseError("lattice exponential of '" + n + "' outside a lattice tensor factor", at.line, at.column);
  };
  return ev(r);
}

Expr Algebra::parse(std::string_view text) const {
  auto is_name = [this](const std::string& n) { return rank_of(n).has_value() || has_field(n); };
  return eval(parse_raw_expr(text, is_name));
}

// ---------------------------------------------------------------- grading

long Algebra::scaled_weight(const Monomial& m) const {
  long w = 0;
  for (auto f : m) w += wunits_[factor_gen(f)] + static_cast<long>(factor_deriv(f)) * unit_;
  return w;
}

Rational Algebra::weight(const Monomial& m) const {
  Rational r(scaled_weight(m), unit_);
  r.canonicalize();
  return r;
}

bool Algebra::odd(const Monomial& m) const {
  bool o = false;
  for (auto f : m) o ^= gens_[factor_gen(f)].odd;
  return o;
}

Rational Algebra::charge(const Monomial& m, const std::string& grading) const {
  Rational c = 0;
  for (auto f : m) {
    auto& ch = gens_[factor_gen(f)].charges;
    auto it = ch.find(grading);
    if (it != ch.end()) c += it->second;
  }
  return c;
}

long Algebra::max_pole(const Monomial& a, const Monomial& b) const {
  return (scaled_weight(a) + scaled_weight(b)) / unit_ - 1;
}

// ---------------------------------------------------------------- table

void Algebra::ensure_pair(unsigned a, unsigned b) const {
  std::lock_guard lock(table_mutex_);
  Pair& p = pairs_[a * gens_.size() + b];
  if (p.state == 2) return;
  if (p.state == 1)
    throw ValidationError("table entry " + gens_[a].name + " " + gens_[b].name + " depends on itself");
  p.state = 1;
  std::vector<Expr> poles;
  if (p.raw && !p.reversed) {
    Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)};
    long wsum = scaled_weight(ma) + scaled_weight(mb);
    bool parity = gens_[a].odd != gens_[b].odd;
    for (auto& [n, raw] : p.raw->poles) {
      std::string where = "ope " + gens_[a].name + " " + gens_[b].name + ", product index " + std::to_string(n);
      Expr v;
      try {
        v = eval(raw);
      } catch (const ParseError& e) {
        p.state = 0;
        throw ValidationError(where + ": " + e.what());
      }
      for (auto& [m, c] : v.terms()) {
        if (scaled_weight(m) != wsum - (n + 1) * unit_) {
          p.state = 0;
          throw ValidationError(where + ": term " + str(m) + " has weight " + weight(m).get_str() +
                                ", expected " + Rational(Rational(wsum) / unit_ - n - 1).get_str());
        }
        if (odd(m) != parity) {
          p.state = 0;
          throw ValidationError(where + ": term " + str(m) + " has the wrong parity");
        }
        for (auto& cn : charge_names_) {
          Rational want = charge(ma, cn) + charge(mb, cn);
          if (charge(m, cn) != want) {
            p.state = 0;
            throw ValidationError(where + ": term " + str(m) + " violates " + cn + "-charge additivity");
          }
        }
      }
      if (static_cast<long>(poles.size()) <= n) poles.resize(n + 1);
      poles[n] = std::move(v);
    }
  } else if (p.raw && p.reversed) {
    // skew symmetry: a_(n) b = -p(a,b) Σ_j (-1)^{n+j} ∂^(j) (b_(n+j) a)
    Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)};
    long top = max_pole(ma, mb);
    Scalar sign = (gens_[a].odd && gens_[b].odd) ? Scalar(1) : Scalar(-1);
    for (long n = 0; n <= top; ++n) {
      Expr acc;
      for (long j = 0; n + j <= top; ++j) {
        const Expr& ba = table(b, a, n + j);
        if (ba.is_zero()) continue;
        Scalar s = ((n + j) % 2 == 0) ? sign : -sign;
        acc.add(divided_deriv(ba, static_cast<unsigned>(j)), s);
      }
      poles.push_back(std::move(acc));
    }
  }
  while (!poles.empty() && poles.back().is_zero()) poles.pop_back();
  p.poles = std::move(poles);
  p.state = 2;
}

const Expr& Algebra::table(unsigned a, unsigned b, long n) const {
  if (n < 0) throw std::invalid_argument("table lookup with negative product index");
  ensure_pair(a, b);
  const Pair& p = pairs_[a * gens_.size() + b];
  if (n >= static_cast<long>(p.poles.size())) return kZero;
  return p.poles[n];
}

// ---------------------------------------------------------------- products

const Expr& Algebra::mono_nth(const Monomial& a, const Monomial& b, long n) const {
  NthKey key{a, b, n};
  {
    std::shared_lock lock(cache_mutex_);
    auto it = nth_cache_.find(key);
    if (it != nth_cache_.end()) return it->second;
  }
  Expr r = compute_nth(a, b, n);
  std::unique_lock lock(cache_mutex_);
  return nth_cache_.emplace(std::move(key), std::move(r)).first->second;
}

Expr Algebra::compute_nth(const Monomial& A, const Monomial& B, long n) const {
  Expr out;
  if (A.empty()) {
    if (n == -1) out.add(B, Scalar(1));
    return out;
  }
  if (B.empty()) {
    if (n >= 0) return out;
    Expr a(A, Scalar(1));
    return divided_deriv(a, static_cast<unsigned>(-n - 1));
  }
  if (n >= 0 && n > max_pole(A, B)) return out;

  if (A.size() == 1) {
    unsigned g = factor_gen(A[0]), d = factor_deriv(A[0]);
    if (n < 0) {
      unsigned m = static_cast<unsigned>(-n - 1);
      out.add(no_factor(make_factor(g, d + m), B), inv_factorial(m));
      return out;
    }
    if (d > 0) {
      if (n < static_cast<long>(d)) return out;
      Rational c = falling(n, d);
      if (d % 2) c = -c;
      out.add(mono_nth(Monomial{make_factor(g, 0)}, B, n - d), Scalar(c));
      return out;
    }
    return gen_action(g, B, n);
  }

  // (:aX:)_(n) B = Σ_j a_(-1-j) (X_(n+j) B) + p(a,X) Σ_j X_(n-1-j) (a_(j) B)
  Factor a = A[0];
  unsigned g = factor_gen(a), d = factor_deriv(a);
  Monomial X = tail(A);
  Monomial ma{a};
  long top = max_pole(X, B);
  for (long j = 0; n + j <= top; ++j) {
    const Expr& xb = mono_nth(X, B, n + j);
    if (xb.is_zero()) continue;
    out.add(no_factor_expr(make_factor(g, d + static_cast<unsigned>(j)), xb), inv_factorial(j));
  }
  Scalar sign = (odd_gen(g) && odd(X)) ? Scalar(-1) : Scalar(1);
  long topa = max_pole(ma, B);
  for (long j = 0; j <= topa; ++j) {
    const Expr& ab = mono_nth(ma, B, j);
    if (ab.is_zero()) continue;
    out.add(nth_right(X, ab, n - 1 - j), sign);
  }
  return out;
}

// a_(n) B for a plain generator a and n >= 0
Expr Algebra::gen_action(unsigned g, const Monomial& B, long n) const {
  Expr out;
  Monomial ma{make_factor(g, 0)};
  Factor b = B[0];
  if (B.size() == 1) {
    // a_(n) ∂^j b = Σ_i C(j,i) n^(i falling) ∂^{j-i} (a_(n-i) b)
    unsigned gb = factor_gen(b), j = factor_deriv(b);
    for (unsigned i = 0; i <= j && static_cast<long>(i) <= n; ++i) {
      const Expr& ab = table(g, gb, n - i);
      if (ab.is_zero()) continue;
      Scalar c = binomial(j, i) * Scalar(falling(n, i));
      out.add(deriv(ab, j - i), c);
    }
    return out;
  }
  Monomial mb{b};
  Monomial Y = tail(B);
  // :(a_(n) b) Y:
  out.add(nth_left(mono_nth(ma, mb, n), Y, -1));
  // p(a,b) :b (a_(n) Y):
  Scalar sign = (odd_gen(g) && odd_gen(factor_gen(b))) ? Scalar(-1) : Scalar(1);
  const Expr& ay = mono_nth(ma, Y, n);
  if (!ay.is_zero()) out.add(no_factor_expr(b, ay), sign);
  // Σ_{j<n} C(n,j) (a_(j) b)_(n-1-j) Y
  for (long j = 0; j < n; ++j) {
    const Expr& ab = mono_nth(ma, mb, j);
    if (ab.is_zero()) continue;
    out.add(nth_left(ab, Y, n - 1 - j), binomial(n, j));
  }
  return out;
}

const Expr& Algebra::no_factor(Factor a, const Monomial& b) const {
  NthKey key{Monomial{a}, b, -1};
  {
    std::shared_lock lock(cache_mutex_);
    auto it = no_cache_.find(key);
    if (it != no_cache_.end()) return it->second;
  }
  Expr r = compute_no_factor(a, b);
  std::unique_lock lock(cache_mutex_);
  return no_cache_.emplace(std::move(key), std::move(r)).first->second;
}

Expr Algebra::compute_no_factor(Factor a, const Monomial& B) const {
  Expr out;
  unsigned ga = factor_gen(a);
  if (B.empty() || a < B[0] || (a == B[0] && !odd_gen(ga))) {
    out.add(prepend(a, B), Scalar(1));
    return out;
  }
  Factor b = B[0];
  Monomial ma{a}, mb{b};
  Monomial Y = tail(B);
  // Σ_j (-1)^j :∂^(j+1)(a_(j) b) Y:
  Expr corr;
  long top = max_pole(ma, mb);
  for (long j = 0; j <= top; ++j) {
    const Expr& ab = mono_nth(ma, mb, j);
    if (ab.is_zero()) continue;
    corr.add(nth_left(divided_deriv(ab, static_cast<unsigned>(j + 1)), Y, -1), Scalar(j % 2 ? -1 : 1));
  }
  if (a == b) {
    // odd a: :a:aY:: = ½ Σ_j (-1)^j :∂^(j+1)(a_(j) a) Y:
    out.add(corr, Scalar(1, 2));
    return out;
  }
  Scalar sign = (odd_gen(ga) && odd_gen(factor_gen(b))) ? Scalar(-1) : Scalar(1);
  out.add(no_factor_expr(b, no_factor(a, Y)), sign);
  out.add(corr);
  return out;
}

Expr Algebra::no_factor_expr(Factor a, const Expr& e) const {
  Expr out;
  for (auto& [m, c] : e.terms()) out.add(no_factor(a, m), c);
  return out;
}

Expr Algebra::nth_left(const Expr& a, const Monomial& b, long n) const {
  Expr out;
  for (auto& [m, c] : a.terms()) out.add(mono_nth(m, b, n), c);
  return out;
}

Expr Algebra::nth_right(const Monomial& a, const Expr& b, long n) const {
  Expr out;
  for (auto& [m, c] : b.terms()) out.add(mono_nth(a, m, n), c);
  return out;
}

Expr Algebra::nth(const Expr& a, const Expr& b, long n) const {
  Expr out;
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      const Expr& r = mono_nth(ma, mb, n);
      if (!r.is_zero()) out.add(r, ca * cb);
    }
  return out;
}

const Expr& Algebra::deriv_mono(const Monomial& m) const {
  {
    std::shared_lock lock(cache_mutex_);
    auto it = deriv_cache_.find(m);
    if (it != deriv_cache_.end()) return it->second;
  }
  Expr r;
  if (!m.empty()) {
    Factor a = m[0];
    Factor da = make_factor(factor_gen(a), factor_deriv(a) + 1);
    Monomial Y = tail(m);
    r.add(prepend(da, Y), Scalar(1));
    if (!Y.empty()) r.add(no_factor_expr(a, deriv_mono(Y)));
  }
  std::unique_lock lock(cache_mutex_);
  return deriv_cache_.emplace(m, std::move(r)).first->second;
}

Expr Algebra::deriv(const Expr& a, unsigned times) const {
  Expr cur = a;
  for (unsigned t = 0; t < times; ++t) {
    Expr next;
    for (auto& [m, c] : cur.terms()) next.add(deriv_mono(m), c);
    cur = std::move(next);
  }
  return cur;
}

Expr Algebra::divided_deriv(const Expr& a, unsigned times) const {
  if (times == 0) return a;
  Rational f = 1;
  for (unsigned i = 2; i <= times; ++i) f *= i;
  return deriv(a, times).scaled(Scalar(Rational(1 / f)));
}

// ---------------------------------------------------------------- printing

std::string Algebra::str(const Monomial& m) const {
  if (m.empty()) return "|0>";
  auto one = [this](Factor f) {
    const std::string& n = gens_[factor_gen(f)].name;
    unsigned d = factor_deriv(f);
    if (d == 0) return n;
    if (d == 1) return "d(" + n + ")";
    return "d^" + std::to_string(d) + "(" + n + ")";
  };
  if (m.size() == 1) return one(m[0]);
  std::string s = ":(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " ";
    s += one(m[i]);
  }
  return s + ")";
}

std::string Algebra::str(const Expr& e) const {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : e.terms()) {
    s += coeff_prefix(c, first) + str(m);
    first = false;
  }
  return s;
}

std::string Algebra::print() const {
  std::string s = "algebra " + pres_.name + "\n";
  if (!pres_.params.empty()) {
    s += "param";
    for (auto& p : pres_.params) s += " " + p;
    s += "\n";
  }
  for (auto& g : pres_.generators) {
    s += "generator " + g.name + " parity=" + (g.odd ? "odd" : "even") + " weight=" + g.weight.get_str();
    for (auto& [c, v] : g.charges) s += " charge." + c + "=" + v.get_str();
    s += "\n";
  }
  if (pres_.lattice)
    s += "lattice " + pres_.lattice->field + " signature=" + std::to_string(pres_.lattice->signature) + "\n";
  for (auto& [f, _] : pres_.fields) s += "field " + f + " = " + str(field(f)) + ";\n";
  if (!pres_.grading.empty()) s += "grading " + pres_.grading + "\n";
  for (auto& e : pres_.ope) {
    unsigned a = rank(e.a), b = rank(e.b);
    ensure_pair(a, b);
    const Pair& p = pairs_[a * gens_.size() + b];
    s += "ope " + e.a + " " + e.b + " {";
    for (long n = static_cast<long>(p.poles.size()) - 1; n >= 0; --n) {
      if (p.poles[n].is_zero()) continue;
      s += " " + std::to_string(n) + ": " + str(p.poles[n]) + ";";
    }
    s += " }\n";
  }
  if (!pres_.ideal.empty()) {
    s += "ideal {";
    for (auto& r : pres_.ideal) s += " " + str(eval(r)) + ";";
    s += " }\n";
  }
  for (auto& [k, v] : pres_.notes) s += "note " + k + (v.empty() ? "" : " " + v) + "\n";
  return s;
}

// ---------------------------------------------------------------- validation

std::vector<std::string> Algebra::validate() const {
  std::vector<std::string> issues;
  std::size_t N = gens_.size();
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b) {
      try {
        ensure_pair(a, b);
      } catch (const std::exception& e) {
        issues.push_back(e.what());
      }
    }
  if (!issues.empty()) return issues;
  // pairs stored in both orders must agree with the skew rule
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b) {
      const Pair& p = pairs_[a * N + b];
      if (!p.raw || p.reversed) continue;
      Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)};
      long top = max_pole(ma, mb);
      Scalar sign = (gens_[a].odd && gens_[b].odd) ? Scalar(1) : Scalar(-1);
      for (long n = 0; n <= top; ++n) {
        Expr acc;
        for (long j = 0; n + j <= top; ++j) {
          const Expr& ba = table(b, a, n + j);
          if (ba.is_zero()) continue;
          acc.add(divided_deriv(ba, static_cast<unsigned>(j)), ((n + j) % 2 == 0) ? sign : -sign);
        }
        if (acc != table(a, b, n))
          issues.push_back("skew symmetry fails for " + gens_[a].name + "_(" + std::to_string(n) + ")" +
                           gens_[b].name + ": stored " + str(table(a, b, n)) + ", skew rule gives " + str(acc));
      }
    }
  if (!pres_.grading.empty()) {
    Expr L;
    try {
      L = parse(pres_.grading);
    } catch (const std::exception& e) {
      issues.push_back("grading field '" + pres_.grading + "': " + e.what());
      return issues;
    }
    for (unsigned a = 0; a < N; ++a) {
      Expr x = Expr(Monomial{make_factor(a, 0)}, Scalar(1));
      if (nth(L, x, 1) != x.scaled(Scalar(gens_[a].weight)))
        issues.push_back("grading field " + pres_.grading + " does not give " + gens_[a].name + " weight " +
                         gens_[a].weight.get_str() + ": got " + str(nth(L, x, 1)));
      if (nth(L, x, 0) != deriv(x))
        issues.push_back("grading field " + pres_.grading + " does not act as d on " + gens_[a].name);
    }
  }
  return issues;
}

}  // namespace voa
