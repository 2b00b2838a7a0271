#pragma once

#include <string>
#include <vector>

#include "voa/algebra.hpp"

namespace voa {

struct CheckFailure {
  std::string identity;  // e.g. "G+_(0)(G-_(1)J)"
  std::string detail;
  Rational weight;
};

struct CheckReport {
  std::size_t checked = 0;
  std::vector<CheckFailure> failures;  // sorted by weight, then identity
  bool ok() const { return failures.empty(); }
};

// b_(n) a against the skew rule applied to a_(m) b for all m >= n; a ranges
// over generators and their first derivatives, b over monomials of length <= 2,
// total weight <= cutoff
CheckReport skew_suite(const Algebra& A, const Rational& cutoff);

// a_(m)(b_(n)c) - p(a,b) b_(n)(a_(m)c) = Σ_j C(m,j) (a_(j)b)_(m+n-j) c for all
// generator triples of total weight <= cutoff and all m, n >= 0
CheckReport jacobi_suite(const Algebra& A, const Rational& cutoff);

// a_(m)(b_(n)c) - p(a,b) b_(n)(a_(m)c) - Σ_j C(m,j)(a_(j)b)_(m+n-j)c
Expr jacobi_defect(const Algebra& A, const Expr& a, const Expr& b, const Expr& c, long m, long n);

// basis monomials of the given weight (optionally restricted to one charge)
std::vector<Monomial> monomials_of_weight(const Algebra& A, const Rational& weight);

}  // namespace voa
