#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "voa/expr.hpp"

namespace voa {

// φ(-λ_1)…φ(-λ_r) e^{mφ}, λ sorted descending
struct LatKey {
  long m = 0;
  std::vector<std::uint16_t> parts;
  bool operator<(const LatKey& o) const { return m != o.m ? m < o.m : parts < o.parts; }
  bool operator==(const LatKey& o) const { return m == o.m && parts == o.parts; }
  bool is_vacuum() const { return m == 0 && parts.empty(); }
};

using LatState = LinComb<LatKey>;

enum class Cocycle {
  Trivial,      // ε ≡ 1
  Alternating,  // ε(m, n) = (-1)^{q m n(n-1)/2}
};

// Rank-one lattice vertex superalgebra F_q, ⟨φ,φ⟩ = q = ±1.
class Lattice {
 public:
  Lattice(std::string field, int signature, Cocycle cocycle = Cocycle::Trivial);

  const std::string& field() const { return field_; }
  int signature() const { return q_; }

  LatState vacuum() const { return LatState(LatKey{}, Scalar(1)); }
  LatState exp(long m) const { return LatState(LatKey{m, {}}, Scalar(1)); }
  LatState phi(unsigned j = 1) const;  // φ(-j)𝟙

  Rational weight(const LatKey& k) const;
  bool odd(const LatKey& k) const { return k.m % 2 != 0; }
  long charge(const LatKey& k) const { return q_ * k.m; }  // φ(0) eigenvalue

  // φ(j) acting on a state, any integer j
  LatState mode(long j, const LatState& s) const;
  // a_(n) b for any integer n
  LatState nth(const LatState& a, const LatState& b, long n) const;
  LatState nth(const LatKey& a, const LatKey& b, long n) const;
  LatState normal(const LatState& a, const LatState& b) const { return nth(a, b, -1); }
  LatState deriv(const LatState& a, unsigned times = 1) const;
  // largest n with a_(n) b possibly nonzero
  long max_pole(const LatKey& a, const LatKey& b) const;

  std::string str(const LatKey& k) const;
  std::string str(const LatState& s) const;

 private:
  std::string field_;
  int q_;
  Cocycle cocycle_;
  mutable std::map<std::tuple<LatKey, LatKey, long>, LatState> cache_;
  mutable std::mutex mutex_;

  LatState compute(const LatKey& a, const LatKey& b, long n) const;
  LatState exp_action(long m, const LatKey& b, long n) const;
  int epsilon(long m, long n) const;
};

}  // namespace voa
