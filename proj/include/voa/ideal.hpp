#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>

#include "voa/algebra.hpp"
#include "voa/linalg.hpp"

namespace voa {

// Weight-graded span of the ideal generated by a list of homogeneous states,
// obtained by closing the generators under all modes of the strong
// generators. Spans are built lazily per cutoff and cached.
class IdealSpan {
 public:
  IdealSpan(const Algebra& A, std::vector<Expr> generators);
  // ideal of the presentation's `ideal` block
  explicit IdealSpan(const Algebra& A);

  const Algebra& algebra() const { return A_; }
  const std::vector<Expr>& generators() const { return gens_; }

  // canonical representative of a modulo the ideal; throws if a has a
  // component of weight above cutoff
  Expr reduce(const Expr& a, long cutoff) const;
  bool contains(const Expr& a, long cutoff) const { return reduce(a, cutoff).is_zero(); }
  // dimension of the ideal in the given weight
  std::size_t dimension(const Rational& weight, long cutoff) const;

 private:
  const Algebra& A_;
  std::vector<Expr> gens_;
  mutable std::map<Rational, Echelon<Monomial>> spans_;  // by weight
  mutable long built_ = -1;
  mutable std::shared_mutex mutex_;
  void build(long cutoff) const;
};

}  // namespace voa
