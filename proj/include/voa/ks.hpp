#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voa/hwmod.hpp"
#include "voa/tensor.hpp"

namespace voa {

struct KsJob {
  std::string job;
  bool pass = false;
  std::string expected, got;
  Rational weight, charge;
};

struct KsReport {
  std::string name;
  std::vector<KsJob> jobs;
  bool ok() const;
  std::size_t failures() const;
};

// A source algebra mapped into V ⊗ F_q by the images of its generators.
//   forward: N=2 at c = -15  ->  W_{-1} ⊗ F_{-1}, modulo the ideal (G+G+, G-G-)
//   inverse: W at k = -1     ->  N=2 at c = -15 ⊗ F_1
class KsSetup {
 public:
  static std::unique_ptr<KsSetup> forward();
  static std::unique_ptr<KsSetup> inverse();
  static std::unique_ptr<KsSetup> make(std::string_view direction);

  const std::string& direction() const { return direction_; }
  const Algebra& source() const { return *source_; }
  const Algebra& factor() const { return *factor_; }
  const Lattice& lattice() const { return *lattice_; }
  const Mixed& target() const { return *target_; }
  const Homomorphism& map() const { return *map_; }
  // the Heisenberg field whose commutant is the image: J + φ⁻ or H - φ⁺
  const MixedState& heisenberg() const { return heis_; }
  Scalar heisenberg_level() const;

 private:
  KsSetup() = default;
  std::string direction_;
  std::unique_ptr<Algebra> source_, factor_;
  std::unique_ptr<Lattice> lattice_;
  std::unique_ptr<IdealSpan> ideal_;
  std::unique_ptr<Mixed> target_;
  std::unique_ptr<Homomorphism> map_;
  MixedState heis_;
};

// Φ(a)_(n)Φ(b) against Φ(a_(n)b) for every ordered generator pair and every
// n >= 0 with result weight <= cutoff
KsReport verify_embedding(const KsSetup& setup, const Rational& cutoff);

struct CommutantRow {
  Rational weight;
  long sector = 0;  // lattice momentum m of e^{mφ}
  std::size_t ambient = 0, commutant = 0, image = 0;
  bool contained = true;  // image ⊆ commutant
  bool ok() const { return contained && commutant == image; }
};

struct CommutantReport {
  std::vector<KsJob> annihilation;  // h_(n)Φ(X) = 0, n >= 0
  std::vector<CommutantRow> rows;
  bool ok() const;
};

// Exact comparison, weight by weight up to the cutoff and for lattice sectors
// |m| <= max_sector, of the h(0)-neutral commutant of the Heisenberg field h
// with the span of images of source monomials.
CommutantReport commutant_check(const KsSetup& setup, const Rational& cutoff, long max_sector = 2);

// ---------------------------------------------------------------- curves

struct CurvePoint {
  Rational k, s;
  bool operator<(const CurvePoint& o) const { return k != o.k ? k < o.k : s < o.s; }
  bool operator==(const CurvePoint& o) const { return k == o.k && s == o.s; }
};

struct SpecialCase {
  Rational c;
  std::vector<CurvePoint> points;
  std::string note;
};

struct CurveIntersection {
  Poly eq_c, eq_lambda;  // numerators of c_N(s) - c_C(k) and λ_N(s) - λ_C(k)
  Poly res_k, res_s;     // eliminants in s (k eliminated) and in k (s eliminated)
  std::vector<CurvePoint> points;        // s-first elimination order
  std::vector<CurvePoint> points_other;  // k-first elimination order
  std::vector<SpecialCase> special;
  bool order_stable() const { return points == points_other; }
};

Scalar parafermion_c(const Scalar& s);
Scalar parafermion_lambda(const Scalar& s);
Scalar coset_c(const Scalar& k);
Scalar coset_lambda(const Scalar& k);

CurveIntersection intersect_truncation_curves();

// ---------------------------------------------------------------- S1 / S2

Scalar g1(const Scalar& x, const Scalar& y, const Scalar& z);
Scalar g2(const Scalar& x, const Scalar& y, const Scalar& z);
// (x, y, z) of the module generated by v_{h,q} ⊗ e^{iφ}, i = 1 for S1 and 2 for S2
std::array<Scalar, 3> s_point(int i, const Scalar& h, const Scalar& q);
// (h, q) with s_point(i, h, q) agreeing with (x, y) in the first two slots
std::pair<Scalar, Scalar> s_preimage(int i, const Scalar& x, const Scalar& y);

struct Classification {
  Rational x, y, z;
  Rational g1, g2;
  std::optional<std::pair<Rational, Rational>> s1, s2;  // (h, q) preimages
  long top_dim = 0;  // 0 when (x,y,z) lies in neither set
};

Classification classify(const Rational& x, const Rational& y, const Rational& z);

// ν(2q - (6/c)(qh + h) - (2(c-9)/3c) h + (6/c²) h³)
Scalar w0_eigenvalue(const Scalar& h, const Scalar& q, const Scalar& c, const Scalar& nu);

// ---------------------------------------------------------------- tensor module

using TensorKey = std::pair<Pbw, LatKey>;
using TensorState = LinComb<TensorKey>;

// M ⊗ F for a highest-weight module M and the lattice algebra F as a module
// over itself; mixed states act through Y(u⊗x, z) = Y(u, z) ⊗ Y(x, z).
class TensorModule {
 public:
  TensorModule(const HwModule& M, const Lattice& F) : M_(M), F_(F) {}

  TensorState state(const ModState& m, const LatState& x) const;
  TensorState act(const MixedState& a, long n, const TensorState& s) const;
  std::string str(const TensorState& s) const;

 private:
  const HwModule& M_;
  const Lattice& F_;
  bool odd(const Pbw& m) const;
};

struct TopSpaceData {
  Scalar x, y, z;       // J(0), L(0), W(0) eigenvalues
  std::vector<KsJob> jobs;  // eigenvector and annihilation conditions
};

// W-action through the inverse embedding on v_{h,q} ⊗ e^{(i-1)φ⁺} in
// L_c[h,q] ⊗ F_1, c = -15
TopSpaceData top_space_data(const KsSetup& inverse, int i, const Scalar& h, const Scalar& q);

// W(0) eigenvalue on v_{h,q} of ν times the parafermion generator, computed in
// the N=2 highest-weight module of central charge c
Scalar w0_module_eigenvalue(const Scalar& h, const Scalar& q, const Scalar& c, const Scalar& nu);

}  // namespace voa
