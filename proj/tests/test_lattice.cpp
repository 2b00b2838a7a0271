#include "doctest.h"
#include "voa/lattice.hpp"
#include "voa/presets.hpp"
#include "voa/tensor.hpp"

using namespace voa;

namespace {

Scalar factorial(long j) {
  Scalar f = 1;
  for (long i = 2; i <= j; ++i) f *= Scalar(i);
  return f;
}

std::vector<LatState> sample(const Lattice& F) {
  return {F.exp(1), F.exp(-1), F.phi(), F.exp(2), F.normal(F.phi(), F.exp(1)), F.phi(2), F.exp(-2),
          F.normal(F.phi(), F.phi())};
}

bool odd(const Lattice& F, const LatState& s) { return F.odd(s.terms().begin()->first); }

// b_(n)a against the skew-symmetry expansion in a_(n+j)b
std::size_t skew_failures(const Lattice& F) {
  std::size_t bad = 0;
  auto gens = sample(F);
  for (auto& a : gens)
    for (auto& b : gens) {
      int p = (odd(F, a) && odd(F, b)) ? -1 : 1;
      long top = F.max_pole(a.terms().begin()->first, b.terms().begin()->first);
      for (long n = -2; n <= top; ++n) {
        LatState rhs;
        for (long j = 0; n + j <= top; ++j) {
          Scalar sign = Scalar(((n + j) % 2 == 0) ? -p : p);
          rhs.add(F.deriv(F.nth(a, b, n + j), j), sign / factorial(j));
        }
        if (F.nth(b, a, n) != rhs) ++bad;
      }
    }
  return bad;
}

}  // namespace

TEST_CASE("lattice basics") {
  for (int q : {1, -1}) {
    Lattice F(q > 0 ? "phip" : "phim", q);
    CAPTURE(q);
    CHECK(F.nth(F.phi(), F.phi(), 1) == F.vacuum().scaled(q));
    CHECK(F.nth(F.phi(), F.exp(3), 0) == F.exp(3).scaled(3 * q));
    CHECK(F.weight(LatKey{2, {}}) == Rational(2 * q));
    CHECK(F.weight(LatKey{1, {}}) == Rational(q, 2));
    CHECK(F.odd(LatKey{1, {}}));
    CHECK_FALSE(F.odd(LatKey{2, {}}));
    // e^{φ}_(n) e^{-φ} starts at n = q - 1 with the vacuum
    CHECK(F.nth(F.exp(1), F.exp(-1), q - 1) == F.vacuum());
    CHECK(F.nth(F.exp(1), F.exp(-1), q).is_zero());
    CHECK(F.deriv(F.exp(2)) == F.nth(F.exp(2), F.vacuum(), -2));
  }
}

TEST_CASE("skew symmetry holds with the trivial cocycle and fails with the alternating one") {
  for (int q : {1, -1}) {
    CAPTURE(q);
    CHECK(skew_failures(Lattice("phi", q)) == 0);
    CHECK(skew_failures(Lattice("phi", q, Cocycle::Alternating)) > 0);
  }
}

TEST_CASE("lattice commutator formula") {
  for (int q : {1, -1}) {
    Lattice F("phi", q);
    auto gens = sample(F);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < gens.size(); i += 2)
      for (std::size_t j = 1; j < gens.size(); j += 3)
        for (std::size_t k = 0; k < gens.size(); k += 3)
          for (long m = 0; m <= 2; ++m)
            for (long n = -2; n <= 1; ++n) {
              auto &a = gens[i], &b = gens[j], &c = gens[k];
              Scalar sign = (odd(F, a) && odd(F, b)) ? Scalar(-1) : Scalar(1);
              LatState lhs = F.nth(a, F.nth(b, c, n), m);
              lhs.add(F.nth(b, F.nth(a, c, m), n), -sign);
              long top = F.max_pole(a.terms().begin()->first, b.terms().begin()->first);
              for (long jj = 0; jj <= std::min(m, top); ++jj)
                lhs.add(F.nth(F.nth(a, b, jj), c, m + n - jj), -binomial(m, jj));
              CHECK(lhs.is_zero());
              ++checked;
            }
    CHECK(checked > 50);
  }
}

TEST_CASE("mixed products carry the Koszul sign") {
  Algebra V(load_preset("n2"));
  Lattice F("phip", 1);
  Mixed T(V, F);
  MixedKey a{V.gen("E").terms().begin()->first, LatKey{1, {}}};
  MixedKey b{V.gen("F").terms().begin()->first, LatKey{-1, {}}};
  // (u⊗x)_(n)(w⊗y) = (-1)^{p(x)p(w)} Σ_i u_(i)w ⊗ x_(n-1-i)y
  for (long n = -1; n <= 3; ++n) {
    CAPTURE(n);
    MixedState want;
    for (long i = -3; i <= 2; ++i) {
      Expr uw = V.nth(V.gen("E"), V.gen("F"), i);
      LatState xy = F.nth(F.exp(1), F.exp(-1), n - 1 - i);
      for (auto& [m, c] : uw.terms())
        for (auto& [l, d] : xy.terms()) want.add(MixedKey{m, l}, -(c * d));
    }
    CHECK(T.nth(a, b, n) == want);
  }
  CHECK(T.odd(a) == false);
  CHECK(T.weight(a) == Rational(1));
}

TEST_CASE("mixed algebra satisfies the commutator formula") {
  Algebra V(load_preset("n2", {{"c", Rational(-15)}}));
  Lattice F("phim", -1);
  Mixed T(V, F);
  std::vector<MixedState> gens = {T.parse(":(E e^{-phim})"), T.parse(":(F e^{phim})"), T.parse("H + phim"), T.parse("T"),
                                  T.parse("e^{phim}"), T.parse(":(H e^{-phim})")};
  std::size_t checked = 0;
  for (auto& a : gens)
    for (auto& b : gens)
      for (auto& c : {gens[0], gens[2], gens[4]})
        for (long m = 0; m <= 1; ++m)
          for (long n = 0; n <= 1; ++n) {
            auto ka = a.terms().begin()->first, kb = b.terms().begin()->first;
            Scalar sign = (T.odd(ka) && T.odd(kb)) ? Scalar(-1) : Scalar(1);
            MixedState d = T.nth(a, T.nth(b, c, n), m);
            d.add(T.nth(b, T.nth(a, c, m), n), -sign);
            for (long j = 0; j <= m; ++j) d.add(T.nth(T.nth(a, b, j), c, m + n - j), -binomial(m, j));
            CHECK(d.is_zero());
            ++checked;
          }
  CHECK(checked == 6 * 6 * 3 * 4);
}
