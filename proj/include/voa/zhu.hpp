#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "voa/algebra.hpp"

namespace voa {

// ordered product [g_1]*[g_2]*… with nondecreasing generator ranks
using ZhuWord = std::vector<std::uint16_t>;
using ZhuPoly = LinComb<ZhuWord>;

// Zhu algebra A(V) of a freely generated algebra, with respect to its grading
// field. Ordered words in the generator images span A(V); half-integer
// weight states lie in O(V).
class Zhu {
 public:
  explicit Zhu(const Algebra& A);

  const Algebra& algebra() const { return A_; }

  ZhuPoly one() const { return ZhuPoly(ZhuWord{}, Scalar(1)); }
  ZhuPoly gen(const std::string& name) const;

  // [a] for a homogeneous state; throws std::invalid_argument otherwise
  ZhuPoly project(const Expr& a) const;
  ZhuPoly project(const Monomial& m) const;
  // normal-form product in A(V)
  ZhuPoly mul(const ZhuPoly& a, const ZhuPoly& b) const;
  // [a]*[b] reduced through the normal form
  ZhuPoly star(const Expr& a, const Expr& b) const { return mul(project(a), project(b)); }
  // Res_z (1+z)^{wt a}/z Y(a,z)b, evaluated directly
  ZhuPoly star_residue(const Expr& a, const Expr& b) const;
  // Res_z (1+z)^{wt a - 1} Y(a,z)b, i.e. [a]*[b] - [b]*[a] for even a
  ZhuPoly commutator_residue(const Expr& a, const Expr& b) const;

  // substitute values for the generator images; all letters must be bound
  Scalar evaluate(const ZhuPoly& p, const std::map<std::string, Scalar>& values) const;

  std::string str(const ZhuPoly& p) const;
  // "[mono] = poly" lines of the last top-level projections
  std::vector<std::string> trace(const Expr& a) const;

 private:
  const Algebra& A_;
  long unit_;
  mutable std::map<Monomial, ZhuPoly> proj_cache_;
  mutable std::map<std::pair<std::uint16_t, ZhuWord>, ZhuPoly> lmul_cache_;
  mutable std::recursive_mutex mutex_;

  Rational homogeneous_weight(const Expr& a) const;
  ZhuPoly mode(unsigned g, long j, const Monomial& X) const;
  ZhuPoly lmul(std::uint16_t g, const ZhuWord& w) const;
  ZhuPoly mul_word(const ZhuWord& u, const ZhuPoly& p) const;
  bool integral(const Rational& w) const { return w.get_den() == 1; }
};

}  // namespace voa
