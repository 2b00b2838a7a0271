#pragma once

#include <map>
#include <string>
#include <vector>

#include "voa/algebra.hpp"

namespace voa {

// a_(n) for a state a; the empty monomial with n = -1 is the identity
using ModeKey = std::pair<Monomial, long>;
using ModeExpr = LinComb<ModeKey>;

// X(n) = X_(n + offset) in the customary labelling of a preset
std::map<std::string, Rational> display_offsets(std::string_view preset);

// Automorphisms of the mode algebra given by Y(Δ(ℓv, z)·, z) with
// Δ(v,z) = z^{v(0)} exp(Σ_{k≥1} v(k)(-z)^{-k}/(-k)) for a Heisenberg vector v.
class SpectralFlow {
 public:
  SpectralFlow(const Algebra& A, Expr v);
  // σ^ℓ on N=2 (v = -H) and ψ^m on the W-algebra (v = -J)
  static SpectralFlow for_preset(const Algebra& A, std::string_view preset);

  const Algebra& algebra() const { return A_; }
  const Expr& vector() const { return v_; }

  // components of Δ(ℓv,z)a as (exponent of z, state)
  std::vector<std::pair<long, Expr>> delta(const Monomial& a, long amount) const;

  ModeExpr mode(const std::string& gen, long n) const;
  ModeExpr apply(const ModeKey& k, long amount) const;
  ModeExpr apply(const ModeExpr& e, long amount) const;

  // canonical form: ∂^d g modes rewritten as g modes, vacuum modes dropped
  // except the identity
  ModeExpr canonical(const ModeExpr& e) const;

  // operator on the vacuum module
  Expr act(const ModeExpr& e, const Expr& w) const;

  // [σ(a_(m)), σ(b_(n))] w = Σ_j C(m,j) σ((a_(j)b)_(m+n-j)) w on test states;
  // returns the failing instances
  std::vector<std::string> automorphism_failures(long amount, long mode_lo, long mode_hi,
                                                 const std::vector<Expr>& tests) const;
  // σ^a σ^b = σ^{a+b} on generator modes
  std::vector<std::string> composition_failures(long a, long b, long mode_lo, long mode_hi) const;

  std::string str(const ModeExpr& e, const std::map<std::string, Rational>& offsets = {}) const;

 private:
  const Algebra& A_;
  Expr v_;
};

}  // namespace voa
