#include "voa/checks.hpp"

#include <algorithm>
#include <functional>

namespace voa {

namespace {

bool expr_odd(const Algebra& A, const Expr& e) { return !e.is_zero() && A.odd(e.terms().begin()->first); }

Rational expr_weight(const Algebra& A, const Expr& e) {
  return e.is_zero() ? Rational(0) : A.weight(e.terms().begin()->first);
}

void sort_failures(CheckReport& r) {
  std::stable_sort(r.failures.begin(), r.failures.end(), [](const CheckFailure& a, const CheckFailure& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.identity < b.identity;
  });
}

}  // namespace

std::vector<Monomial> monomials_of_weight(const Algebra& A, const Rational& weight) {
  std::vector<Monomial> out;
  Rational scaled = weight * A.weight_units();
  if (scaled.get_den() != 1 || sgn(scaled) < 0) return out;
  long target = mpz_class(scaled.get_num()).get_si();
  long unit = A.weight_units();
  std::vector<Factor> factors;
  for (unsigned g = 0; g < A.size(); ++g) {
    long w = A.scaled_weight(Monomial{make_factor(g, 0)});
    for (unsigned d = 0; w + static_cast<long>(d) * unit <= target; ++d) factors.push_back(make_factor(g, d));
  }
  std::sort(factors.begin(), factors.end());
  Monomial cur;
  std::function<void(std::size_t, long)> rec = [&](std::size_t from, long left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < factors.size(); ++i) {
      long w = A.scaled_weight(Monomial{factors[i]});
      if (w > left) continue;
      cur.push_back(factors[i]);
      bool odd = A.generator(factor_gen(factors[i])).odd;
      rec(odd ? i + 1 : i, left - w);
      cur.pop_back();
    }
  };
  rec(0, target);
  std::sort(out.begin(), out.end());
  return out;
}

Expr jacobi_defect(const Algebra& A, const Expr& a, const Expr& b, const Expr& c, long m, long n) {
  Expr lhs = A.nth(a, A.nth(b, c, n), m);
  Scalar sign = (expr_odd(A, a) && expr_odd(A, b)) ? Scalar(-1) : Scalar(1);
  lhs.add(A.nth(b, A.nth(a, c, m), n), -sign);
  for (long j = 0; j <= m; ++j) {
    Expr ab = A.nth(a, b, j);
    if (ab.is_zero()) continue;
    lhs.add(A.nth(ab, c, m + n - j), -binomial(m, j));
  }
  return lhs;
}

CheckReport skew_suite(const Algebra& A, const Rational& cutoff) {
  CheckReport rep;
  std::vector<Monomial> lefts, rights;
  for (unsigned g = 0; g < A.size(); ++g)
    for (unsigned d = 0; d < 2; ++d) {
      Monomial m{make_factor(g, d)};
      if (A.weight(m) <= cutoff) lefts.push_back(m);
    }
  for (long u = 1; Rational(u) / A.weight_units() <= cutoff; ++u) {
    Rational w(u, A.weight_units());
    w.canonicalize();
    for (auto& m : monomials_of_weight(A, w))
      if (m.size() <= 2) rights.push_back(m);
  }
  for (auto& a : lefts)
    for (auto& b : rights) {
      if (A.weight(a) + A.weight(b) > cutoff) continue;
      long top = A.max_pole(a, b);
      Scalar sign = (A.odd(a) && A.odd(b)) ? Scalar(1) : Scalar(-1);
      for (long n = 0; n <= top; ++n) {
        Expr acc;
        for (long j = 0; n + j <= top; ++j) {
          const Expr& ab = A.mono_nth(a, b, n + j);
          if (ab.is_zero()) continue;
          acc.add(A.divided_deriv(ab, static_cast<unsigned>(j)), ((n + j) % 2 == 0) ? sign : -sign);
        }
        ++rep.checked;
        const Expr& ba = A.mono_nth(b, a, n);
        if (ba != acc)
          rep.failures.push_back({A.str(b) + "_(" + std::to_string(n) + ")" + A.str(a),
                                  "direct " + A.str(ba) + ", skew rule " + A.str(acc), A.weight(a) + A.weight(b)});
      }
    }
  sort_failures(rep);
  return rep;
}

CheckReport jacobi_suite(const Algebra& A, const Rational& cutoff) {
  CheckReport rep;
  std::size_t N = A.size();
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b)
      for (unsigned c = 0; c < N; ++c) {
        Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)}, mc{make_factor(c, 0)};
        Rational total = A.weight(ma) + A.weight(mb) + A.weight(mc);
        if (total > cutoff) continue;
        Expr ea(ma, Scalar(1)), eb(mb, Scalar(1)), ec(mc, Scalar(1));
        long ntop = A.max_pole(mb, mc);
        long mtop = mpz_class(total.get_num() / total.get_den()).get_si();
        for (long n = 0; n <= ntop; ++n)
          for (long m = 0; m <= mtop; ++m) {
            ++rep.checked;
            Expr d = jacobi_defect(A, ea, eb, ec, m, n);
            if (d.is_zero()) continue;
            std::string id = A.generator(a).name + "_(" + std::to_string(m) + ")(" + A.generator(b).name + "_(" +
                             std::to_string(n) + ")" + A.generator(c).name + ")";
            rep.failures.push_back({id, "defect " + A.str(d), total});
          }
      }
  sort_failures(rep);
  (void)expr_weight;
  return rep;
}

}  // namespace voa
