#include "voa/zhu.hpp"

#include <algorithm>

namespace voa {

namespace {

Monomial tail(const Monomial& m) { return Monomial(m.begin() + 1, m.end()); }

Scalar factorial(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return Scalar(Rational(f));
}

}  // namespace

Zhu::Zhu(const Algebra& A) : A_(A), unit_(A.weight_units()) {}

ZhuPoly Zhu::gen(const std::string& name) const {
  return ZhuPoly(ZhuWord{static_cast<std::uint16_t>(A_.rank(name))}, Scalar(1));
}

Rational Zhu::homogeneous_weight(const Expr& a) const {
  if (a.is_zero()) return 0;
  Rational w = A_.weight(a.terms().begin()->first);
  for (auto& [m, _] : a.terms())
    if (A_.weight(m) != w) throw std::invalid_argument("state " + A_.str(a) + " is not homogeneous");
  return w;
}

ZhuPoly Zhu::project(const Expr& a) const {
  homogeneous_weight(a);
  ZhuPoly out;
  for (auto& [m, c] : a.terms()) out.add(project(m), c);
  return out;
}

ZhuPoly Zhu::project(const Monomial& m) const {
  if (m.empty()) return one();
  if (!integral(A_.weight(m))) return ZhuPoly();
  std::lock_guard lock(mutex_);
  if (auto it = proj_cache_.find(m); it != proj_cache_.end()) return it->second;
  // :(∂^d g) X: = d! g_(-1-d) X
  unsigned g = factor_gen(m[0]);
  long d = factor_deriv(m[0]);
  ZhuPoly r = mode(g, -1 - d, tail(m)).scaled(factorial(d));
  proj_cache_.emplace(m, r);
  return r;
}

// [g_(j) X]
ZhuPoly Zhu::mode(unsigned g, long j, const Monomial& X) const {
  Monomial gm{make_factor(g, 0)};
  Rational wg = A_.generator(g).weight;
  if (!integral(wg + A_.weight(X) - j - 1)) return ZhuPoly();
  if (j >= 0) return project(A_.nth(Expr(gm, Scalar(1)), Expr(X, Scalar(1)), j));
  ZhuPoly out;
  if (integral(wg)) {
    long w = wg.get_num().get_si();
    // Σ_i C(wt g, i) g_(i-2-m) X ∈ O(V), and g*X = Σ_i C(wt g, i) g_(i-1) X
    if (j == -1) out = mul(gen(A_.generator(g).name), project(X));
    for (long i = 1; i <= w; ++i) out.add(mode(g, j + i, X), -binomial(w, i));
  } else {
    // half-integer weight: Σ_i C(wt g - 1/2, i) g_(i-1-m) X ∈ O(V)
    Rational h = wg - Rational(1, 2);
    long w = h.get_num().get_si();
    for (long i = 1; i <= w; ++i) out.add(mode(g, j + i, X), -binomial(w, i));
  }
  return out;
}

ZhuPoly Zhu::lmul(std::uint16_t g, const ZhuWord& w) const {
  if (w.empty() || g <= w.front()) {
    ZhuWord r{g};
    r.insert(r.end(), w.begin(), w.end());
    return ZhuPoly(r, Scalar(1));
  }
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(g, w);
  if (auto it = lmul_cache_.find(key); it != lmul_cache_.end()) return it->second;
  // [g]*[h]*rest = [h]*([g]*rest) + ([g]*[h] - [h]*[g])*rest
  std::uint16_t h = w.front();
  ZhuWord rest(w.begin() + 1, w.end());
  bool both_odd = A_.generator(g).odd && A_.generator(h).odd;
  ZhuPoly out = mul_word(ZhuWord{h}, lmul(g, rest)).scaled(both_odd ? Scalar(-1) : Scalar(1));
  ZhuPoly comm = commutator_residue(A_.gen(A_.generator(g).name), A_.gen(A_.generator(h).name));
  out.add(mul(comm, ZhuPoly(rest, Scalar(1))));
  lmul_cache_.emplace(key, out);
  return out;
}

ZhuPoly Zhu::mul_word(const ZhuWord& u, const ZhuPoly& p) const {
  ZhuPoly cur = p;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    ZhuPoly next;
    for (auto& [w, c] : cur.terms()) next.add(lmul(*it, w), c);
    cur = std::move(next);
  }
  return cur;
}

ZhuPoly Zhu::mul(const ZhuPoly& a, const ZhuPoly& b) const {
  ZhuPoly out;
  for (auto& [u, c] : a.terms()) out.add(mul_word(u, b), c);
  return out;
}

ZhuPoly Zhu::star_residue(const Expr& a, const Expr& b) const {
  Rational w = homogeneous_weight(a);
  homogeneous_weight(b);
  if (!integral(w)) throw std::invalid_argument("star product needs an integer-weight left factor");
  long n = w.get_num().get_si();
  ZhuPoly out;
  for (long i = 0; i <= n; ++i) out.add(project(A_.nth(a, b, i - 1)), binomial(n, i));
  return out;
}

ZhuPoly Zhu::commutator_residue(const Expr& a, const Expr& b) const {
  Rational w = homogeneous_weight(a);
  Rational top = w + homogeneous_weight(b) - 1;
  if (!integral(w)) throw std::invalid_argument("commutator needs an integer-weight left factor");
  long n = w.get_num().get_si() - 1;
  long last = mpz_class(top.get_num() / top.get_den()).get_si();
  if (n >= 0) last = std::min(last, n);
  ZhuPoly out;
  for (long i = 0; i <= last; ++i) out.add(project(A_.nth(a, b, i)), binomial(n, i));
  return out;
}

Scalar Zhu::evaluate(const ZhuPoly& p, const std::map<std::string, Scalar>& values) const {
  Scalar out;
  for (auto& [w, c] : p.terms()) {
    Scalar t = c;
    for (auto g : w) {
      auto it = values.find(A_.generator(g).name);
      if (it == values.end()) throw std::invalid_argument("no value for [" + A_.generator(g).name + "]");
      t *= it->second;
    }
    out += t;
  }
  return out;
}

std::string Zhu::str(const ZhuPoly& p) const {
  if (p.is_zero()) return "0";
  std::vector<std::pair<ZhuWord, Scalar>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first.size() > b.first.size(); });
  std::string out;
  bool first = true;
  for (auto& [w, c] : terms) {
    if (w.empty()) {
      std::string pre = coeff_prefix(c, first);
      if (c.is_constant() && abs(c.value()) == 1) pre += "1";
      out += pre;
    } else {
      out += coeff_prefix(c, first);
      for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (i) out += " ";
        out += "[" + A_.generator(w[i]).name + "]";
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
      }
    }
    first = false;
  }
  // coeff_prefix leaves a trailing space before a bare constant
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> Zhu::trace(const Expr& a) const {
  std::vector<std::string> out;
  for (auto& [m, c] : a.terms()) out.push_back("[" + A_.str(m) + "] = " + str(project(m)));
  return out;
}

}  // namespace voa
