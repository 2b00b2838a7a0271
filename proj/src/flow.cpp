#include "voa/flow.hpp"

namespace voa {

std::map<std::string, Rational> display_offsets(std::string_view preset) {
  if (preset == "n2") return {{"H", 0}, {"T", 1}, {"E", Rational(1, 2)}, {"F", Rational(1, 2)}};
  if (preset == "wsl4sub" || preset == "wsl4sub-altB") return {{"J", 0}, {"L", 1}, {"G+", 0}, {"G-", 2}, {"W", 2}};
  return {};
}

SpectralFlow::SpectralFlow(const Algebra& A, Expr v) : A_(A), v_(std::move(v)) {
  for (auto& [m, _] : v_.terms())
    if (A_.weight(m) != 1) throw std::invalid_argument("spectral flow vector must have weight 1");
  for (long n = 0; n <= 3; ++n) {
    Expr p = A_.nth(v_, v_, n);
    bool ok = n == 1 ? (p.is_zero() || (p.size() == 1 && p.terms().begin()->first.empty())) : p.is_zero();
    if (!ok) throw std::invalid_argument("vector " + A_.str(v_) + " is not Heisenberg-like");
  }
}

SpectralFlow SpectralFlow::for_preset(const Algebra& A, std::string_view preset) {
  if (preset == "n2") return SpectralFlow(A, -A.gen("H"));
  if (preset == "wsl4sub" || preset == "wsl4sub-altB") return SpectralFlow(A, -A.gen("J"));
  throw std::invalid_argument("no spectral flow for preset '" + std::string(preset) + "'");
}

std::vector<std::pair<long, Expr>> SpectralFlow::delta(const Monomial& a, long amount) const {
  Expr v = v_.scaled(Scalar(amount));
  Expr A(a, Scalar(1));
  Expr zero = A_.nth(v, A, 0);
  Scalar e;
  if (!zero.is_zero()) {
    if (zero.size() != 1 || zero.terms().begin()->first != a)
      throw std::invalid_argument("state " + A_.str(a) + " is not a v(0)-eigenvector");
    e = zero.terms().begin()->second;
  }
  if (!e.is_constant() || e.value().get_den() != 1)
    throw std::invalid_argument("v(0)-eigenvalue of " + A_.str(a) + " is not an integer");
  long ev = e.value().get_num().get_si();

  // exp(X) with X = Σ_k (-1)^{k+1} v_(k) z^{-k} / k
  std::map<long, Expr> total{{0, A}}, term{{0, A}};
  for (long r = 1; !term.empty(); ++r) {
    std::map<long, Expr> next;
    for (auto& [k0, s] : term) {
      Rational w = A_.weight(s.terms().begin()->first);
      for (long k = 1; w - k >= 0; ++k) {
        Expr t = A_.nth(v, s, k);
        if (t.is_zero()) continue;
        Rational c(k % 2 ? 1 : -1, k * r);
        c.canonicalize();
        next[k0 + k].add(t, Scalar(c));
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    for (auto& [k, s] : next) total[k].add(s);
    term = std::move(next);
  }
  std::vector<std::pair<long, Expr>> out;
  for (auto& [k, s] : total)
    if (!s.is_zero()) out.emplace_back(ev - k, s);
  return out;
}

ModeExpr SpectralFlow::mode(const std::string& gen, long n) const {
  return ModeExpr(ModeKey{Monomial{make_factor(A_.rank(gen), 0)}, n}, Scalar(1));
}

ModeExpr SpectralFlow::canonical(const ModeExpr& e) const {
  ModeExpr out;
  for (auto& [k, c] : e.terms()) {
    auto& [m, n] = k;
    if (m.empty()) {
      if (n == -1) out.add(k, c);
    } else if (m.size() == 1 && factor_deriv(m[0]) > 0) {
      unsigned d = factor_deriv(m[0]);
      Rational f = falling(n, d);
      if (d % 2) f = -f;
      out.add(ModeKey{Monomial{make_factor(factor_gen(m[0]), 0)}, n - static_cast<long>(d)}, c * Scalar(f));
    } else {
      out.add(k, c);
    }
  }
  return out;
}

ModeExpr SpectralFlow::apply(const ModeKey& key, long amount) const {
  auto& [a, n] = key;
  ModeExpr out;
  if (a.empty()) {
    out.add(key, Scalar(1));
    return canonical(out);
  }
  // Y(Σ z^{p} a_p, z): the z^{-n-1} coefficient uses (a_p)_(n+p)
  for (auto& [p, s] : delta(a, amount))
    for (auto& [m, c] : s.terms()) out.add(ModeKey{m, n + p}, c);
  return canonical(out);
}

ModeExpr SpectralFlow::apply(const ModeExpr& e, long amount) const {
  ModeExpr out;
  for (auto& [k, c] : e.terms()) out.add(apply(k, amount), c);
  return out;
}

Expr SpectralFlow::act(const ModeExpr& e, const Expr& w) const {
  Expr out;
  for (auto& [k, c] : e.terms()) out.add(A_.nth(Expr(k.first, Scalar(1)), w, k.second), c);
  return out;
}

std::vector<std::string> SpectralFlow::automorphism_failures(long amount, long lo, long hi,
                                                             const std::vector<Expr>& tests) const {
  std::vector<std::string> bad;
  for (unsigned a = 0; a < A_.size(); ++a)
    for (unsigned b = 0; b < A_.size(); ++b) {
      Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)};
      bool sign = A_.generator(a).odd && A_.generator(b).odd;
      long top = A_.max_pole(ma, mb);
      for (long m = lo; m <= hi; ++m)
        for (long n = lo; n <= hi; ++n) {
          ModeExpr sa = apply(ModeKey{ma, m}, amount), sb = apply(ModeKey{mb, n}, amount);
          ModeExpr rhs;
          for (long j = 0; j <= top; ++j) {
            Scalar c = binomial(m, j);
            if (c.is_zero()) continue;
            for (auto& [mono, d] : A_.table(a, b, j).terms()) rhs.add(apply(ModeKey{mono, m + n - j}, amount), c * d);
          }
          for (std::size_t t = 0; t < tests.size(); ++t) {
            Expr lhs = act(sa, act(sb, tests[t]));
            lhs.add(act(sb, act(sa, tests[t])), sign ? Scalar(1) : Scalar(-1));
            if (lhs != act(rhs, tests[t]))
              bad.push_back("[" + A_.generator(a).name + "_(" + std::to_string(m) + "), " + A_.generator(b).name +
                            "_(" + std::to_string(n) + ")] on " + A_.str(tests[t]));
          }
        }
    }
  return bad;
}

std::vector<std::string> SpectralFlow::composition_failures(long a, long b, long lo, long hi) const {
  std::vector<std::string> bad;
  for (unsigned g = 0; g < A_.size(); ++g)
    for (long n = lo; n <= hi; ++n) {
      ModeKey k{Monomial{make_factor(g, 0)}, n};
      if (apply(apply(k, b), a) != apply(k, a + b))
        bad.push_back(A_.generator(g).name + "_(" + std::to_string(n) + ") under " + std::to_string(a) + " then " +
                      std::to_string(b));
    }
  return bad;
}

std::string SpectralFlow::str(const ModeExpr& e, const std::map<std::string, Rational>& offsets) const {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    auto& [m, n] = it->first;
    out += coeff_prefix(it->second, first);
    if (m.empty()) {
      if (!it->second.is_constant() || abs(it->second.value()) == 1) out += "1";
      else out.pop_back();
    } else if (m.size() == 1 && offsets.count(A_.generator(factor_gen(m[0])).name)) {
      out += A_.generator(factor_gen(m[0])).name + "(" +
             Rational(Rational(n) - offsets.at(A_.generator(factor_gen(m[0])).name)).get_str() + ")";
    } else {
      out += A_.str(m) + "_(" + std::to_string(n) + ")";
    }
    first = false;
  }
  return out;
}

}  // namespace voa
