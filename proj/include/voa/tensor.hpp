#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <utility>

#include "voa/algebra.hpp"
#include "voa/ideal.hpp"
#include "voa/lattice.hpp"

namespace voa {

// u ⊗ x with u in a table-presented algebra and x in a rank-one lattice
// algebra
using MixedKey = std::pair<Monomial, LatKey>;
using MixedState = LinComb<MixedKey>;

// V ⊗ F_q, optionally modulo I ⊗ F_q for an ideal I of V.
class Mixed {
 public:
  Mixed(const Algebra& V, const Lattice& F, const IdealSpan* ideal = nullptr);

  const Algebra& algebra() const { return V_; }
  const Lattice& lattice() const { return F_; }
  const IdealSpan* ideal() const { return ideal_; }

  MixedState vacuum() const { return MixedState(MixedKey{}, Scalar(1)); }
  MixedState from_v(const Expr& e) const;
  MixedState from_lattice(const LatState& s) const;
  MixedState eval(const RawExpr& r) const;
  MixedState parse(std::string_view text) const;

  MixedState nth(const MixedState& a, const MixedState& b, long n) const;
  MixedState nth(const MixedKey& a, const MixedKey& b, long n) const;
  MixedState normal(const MixedState& a, const MixedState& b) const { return nth(a, b, -1); }
  MixedState deriv(const MixedState& a, unsigned times = 1) const;

  Rational weight(const MixedKey& k) const { return V_.weight(k.first) + F_.weight(k.second); }
  bool odd(const MixedKey& k) const { return V_.odd(k.first) != F_.odd(k.second); }
  Rational charge(const MixedKey& k, const std::string& grading) const { return V_.charge(k.first, grading); }

  // canonical representative modulo I ⊗ F (identity without an ideal)
  MixedState reduce(const MixedState& s) const;

  std::string str(const MixedKey& k) const;
  std::string str(const MixedState& s) const;

 private:
  const Algebra& V_;
  const Lattice& F_;
  const IdealSpan* ideal_;
  mutable std::map<std::tuple<MixedKey, MixedKey, long>, MixedState> cache_;
  mutable std::shared_mutex mutex_;
};

// strongly generated images of a source algebra's generators, extended to all
// normally ordered monomials
class Homomorphism {
 public:
  Homomorphism(const Algebra& source, const Mixed& target, std::map<std::string, MixedState> images);
  const Algebra& source() const { return S_; }
  const Mixed& target() const { return T_; }
  const MixedState& image(const std::string& generator) const { return images_.at(generator); }
  MixedState operator()(const Expr& e) const;
  MixedState operator()(const Monomial& m) const;

 private:
  const Algebra& S_;
  const Mixed& T_;
  std::map<std::string, MixedState> images_;
  mutable std::map<Monomial, MixedState> cache_;
  mutable std::mutex mutex_;
};

}  // namespace voa
