#pragma once

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "voa/algebra.hpp"
#include "voa/checks.hpp"
#include "voa/linalg.hpp"

namespace voa {

// Mode g_(n) of a generator, packed so that descending codes follow the PBW
// order: weight shift descending, then generator rank ascending.
using ModeCode = std::uint32_t;
// ordered creation monomial c_1 c_2 … c_r v with c_1 >= c_2 >= …
using Pbw = std::vector<ModeCode>;
using ModState = LinComb<Pbw>;

// Highest-weight conditions on v. A mode g_(n) shifts the grading weight by
// wt(g) - n - 1: negative shifts annihilate v, positive shifts create. Zero
// shifts act by the listed eigenvalue, annihilate if listed in `annihilate`,
// and create otherwise.
struct HighestWeightSpec {
  std::map<std::string, std::pair<long, Scalar>> eigen;  // generator -> (n, eigenvalue of g_(n))
  std::set<std::string> annihilate;

  // J(0)v = x v, L(0)v = y v, W(0)v = z v, G+(0)v = 0
  static HighestWeightSpec w_algebra(const Scalar& x, const Scalar& y, const Scalar& z);
  // H(0)v = h v, T(0)v = q v with the twisted conditions E(n-1/2)v = F(n+3/2)v = 0
  static HighestWeightSpec n2_twisted(const Scalar& h, const Scalar& q);
};

// Highest-weight module generated freely (Verma-like) by the creation modes.
class HwModule {
 public:
  HwModule(const Algebra& A, HighestWeightSpec spec, const Rational& cutoff = 4);

  const Algebra& algebra() const { return A_; }
  const Rational& cutoff() const { return cutoff_; }
  const HighestWeightSpec& spec() const { return spec_; }
  ModState top() const { return ModState(Pbw{}, Scalar(1)); }

  ModeCode code(unsigned gen, long n) const;
  unsigned mode_gen(ModeCode c) const { return 255u - (c & 255u); }
  long mode_index(ModeCode c) const;
  Rational shift(ModeCode c) const;

  // depth above the top space and charge relative to v
  Rational depth(const Pbw& m) const;
  Rational charge(const Pbw& m, const std::string& grading) const;

  ModState act(const std::string& gen, long n, const ModState& w) const;
  ModState act(unsigned gen, long n, const ModState& w) const;
  // n-th mode of an arbitrary state of the algebra
  ModState act(const Expr& a, long n, const ModState& w) const;

  // PBW monomials of the given depth and relative charge
  std::vector<Pbw> basis(const Rational& depth, const Rational& charge) const;

  std::string str(const Pbw& m) const;
  std::string str(const ModState& s) const;

 private:
  const Algebra& A_;
  HighestWeightSpec spec_;
  Rational cutoff_;
  std::string grading_;  // charge grading used for bases
  std::vector<long> wu_;  // scaled generator weights
  std::vector<int> zero_role_;  // per generator: 0 creates, 1 eigen, 2 annihilates
  std::vector<Scalar> eigen_;

  mutable std::map<std::pair<ModeCode, Pbw>, ModState> gen_cache_;
  mutable std::map<std::tuple<Monomial, long, Pbw>, ModState> mono_cache_;
  mutable std::recursive_mutex mutex_;

  ModState act_code(ModeCode x, const Pbw& m) const;
  ModState act_code(ModeCode x, const ModState& s) const;
  ModState act_mono(const Monomial& a, long k, const Pbw& w) const;
  ModState act_mono(const Monomial& a, long k, const ModState& w) const;
  ModState bracket(ModeCode x, ModeCode y, const ModState& rest) const;
  long scaled_shift(ModeCode c) const;
  void check(const ModState& s) const;
};

struct SingularResult {
  std::vector<Expr> vacuum;        // kernel basis in the vacuum module
  std::vector<ModState> module;    // kernel basis in a highest-weight module
  std::size_t space_dim = 0;       // dimension of the searched weight space
};

// states of the vacuum module of given weight and charge annihilated by all
// lowering modes and by the annihilating zero-shift modes of `spec`
SingularResult vacuum_singular_vectors(const Algebra& A, const Rational& weight, const Rational& charge,
                                       const std::set<std::string>& zero_annihilators);
SingularResult singular_vectors(const HwModule& M, const Rational& depth, const Rational& charge);

// ∃ i ∈ {1,…,n-1} with i(k+n-1) = s
bool gplus_power_singular(long n, long s, const Rational& k);

// polynomial in k whose roots are the levels at which the 1-dimensional
// charge-s space of weight s spanned by (G+)^s is singular
Poly gplus_power_locus(const Algebra& universal, long s);

// dimension of the top space of the irreducible quotient of the module with
// highest weight (x,y,z) at k = -1; throws MathError unless the module
// descends to the simple quotient
long top_space_dim(const Algebra& w_at_minus_one, const Rational& x, const Rational& y, const Rational& z);

// f_i with G+(0) G-(0)^i v = f_i G-(0)^{i-1} v
Scalar top_space_factor(const HwModule& M, long i);

}  // namespace voa
