#include "voa/ideal.hpp"

#include <deque>

namespace voa {

namespace {
Rational homogeneous_weight(const Algebra& A, const Expr& e) {
  Rational w = A.weight(e.terms().begin()->first);
  for (auto& [m, _] : e.terms())
    if (A.weight(m) != w) throw std::invalid_argument("ideal generator " + A.str(e) + " is not homogeneous");
  return w;
}
}  // namespace

IdealSpan::IdealSpan(const Algebra& A, std::vector<Expr> generators) : A_(A) {
  for (auto& g : generators)
    if (!g.is_zero()) gens_.push_back(std::move(g));
}

IdealSpan::IdealSpan(const Algebra& A) : A_(A) {
  for (auto& r : A.presentation().ideal) {
    Expr e = A.eval(r);
    if (!e.is_zero()) gens_.push_back(std::move(e));
  }
}

void IdealSpan::build(long cutoff) const {
  spans_.clear();
  std::deque<std::pair<Rational, Expr>> work;
  auto push = [&](const Expr& v) {
    for (auto& [m, c] : v.terms()) {
      (void)c;
      Rational w = A_.weight(m);
      if (w > cutoff) continue;
      // split into homogeneous components
      Expr part;
      for (auto& [m2, c2] : v.terms())
        if (A_.weight(m2) == w) part.add(m2, c2);
      if (auto row = spans_[w].insert(part)) work.emplace_back(w, *row);
    }
  };
  for (auto& g : gens_) {
    homogeneous_weight(A_, g);
    push(g);
  }
  while (!work.empty()) {
    auto [w, v] = std::move(work.front());
    work.pop_front();
    for (unsigned g = 0; g < A_.size(); ++g) {
      Expr eg = Expr(Monomial{make_factor(g, 0)}, Scalar(1));
      Rational wg = A_.generator(g).weight;
      // result weight w + wg - n - 1 must lie in [0, cutoff]
      Rational lo = w + wg - 1 - cutoff;
      long nmin = mpz_class(lo.get_num() / lo.get_den()).get_si();
      if (Rational(nmin) < lo) ++nmin;
      Rational hi = w + wg - 1;
      long nmax = mpz_class(hi.get_num() / hi.get_den()).get_si();
      if (Rational(nmax) > hi) --nmax;
      for (long n = nmin; n <= nmax; ++n) {
        Expr r = A_.nth(eg, v, n);
        if (!r.is_zero()) push(r);
      }
    }
  }
  built_ = cutoff;
}

Expr IdealSpan::reduce(const Expr& a, long cutoff) const {
  for (auto& [m, _] : a.terms())
    if (A_.weight(m) > cutoff)
      throw std::invalid_argument("weight cutoff " + std::to_string(cutoff) + " is below the weight " +
                                  A_.weight(m).get_str() + " of " + A_.str(m));
  {
    std::shared_lock lock(mutex_);
    if (built_ >= cutoff) {
      Expr out;
      std::map<Rational, Expr> parts;
      for (auto& [m, c] : a.terms()) parts[A_.weight(m)].add(m, c);
      for (auto& [w, p] : parts) {
        auto it = spans_.find(w);
        out += it == spans_.end() ? p : it->second.reduce(p);
      }
      return out;
    }
  }
  {
    std::unique_lock lock(mutex_);
    if (built_ < cutoff) build(cutoff);
  }
  return reduce(a, cutoff);
}

std::size_t IdealSpan::dimension(const Rational& weight, long cutoff) const {
  reduce(Expr(), cutoff);
  {
    std::unique_lock lock(mutex_);
    if (built_ < cutoff) build(cutoff);
  }
  std::shared_lock lock(mutex_);
  auto it = spans_.find(weight);
  return it == spans_.end() ? 0 : it->second.rank();
}

}  // namespace voa
