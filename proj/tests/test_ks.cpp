#include <set>

#include "doctest.h"
#include "voa/ks.hpp"
#include "voa/presets.hpp"
#include "voa/suites.hpp"
#include "voa/zhu.hpp"

using namespace voa;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// direct rational evaluation of the two curves
std::optional<Rational> cn(const Rational& s) {
  if (s == -2) return std::nullopt;
  return Rational(2 * (s - 1) / (s + 2));
}
std::optional<Rational> ln(const Rational& s) {
  Rational d = (s - 2) * (3 * s + 4);
  if (d == 0) return std::nullopt;
  return Rational((s + 1) / d);
}
std::optional<Rational> cc(const Rational& k) {
  if (k == -4) return std::nullopt;
  return Rational(-4 * (5 + 2 * k) * (7 + 3 * k) / (4 + k));
}
std::optional<Rational> lc(const Rational& k) {
  Rational d = 3 * (2 + k) * (2 + k) * (16 + 5 * k);
  if (d == 0) return std::nullopt;
  return Rational(-(3 + k) * (4 + k) / d);
}

}  // namespace

TEST_CASE("curve intersections against a search over small rationals") {
  std::set<CurvePoint> found;
  for (long den = 1; den <= 12; ++den)
    for (long num = -60; num <= 60; ++num) {
      Rational k = q(num, den);
      auto c = cc(k), l = lc(k);
      if (!c || !l || *c == 2) continue;
      // c_N(s) = c is linear in s
      Rational s = (2 + 2 * *c) / (2 - *c);
      auto c2 = cn(s), l2 = ln(s);
      if (c2 && l2 && *c2 == *c && *l2 == *l) found.insert({k, s});
    }
  CurveIntersection r = intersect_truncation_curves();
  CHECK(std::vector<CurvePoint>(found.begin(), found.end()) == r.points);
  CHECK(r.points.size() == 5);
  CHECK(r.order_stable());
  for (auto& p : r.points) {
    CHECK(coset_c(p.k) == parafermion_c(p.s));
    CHECK(coset_lambda(p.k) == parafermion_lambda(p.s));
  }
}

TEST_CASE("special central charges") {
  CurveIntersection r = intersect_truncation_curves();
  REQUIRE(r.special.size() == 2);
  for (auto& sc : r.special) {
    CAPTURE(sc.c);
    for (auto& p : sc.points) {
      CHECK(*cc(p.k) == sc.c);
      CHECK(*cn(p.s) == sc.c);
    }
  }
  CHECK(r.special[0].points == std::vector<CurvePoint>{{q(-5, 2), 1}, {q(-7, 3), 1}});
  CHECK(r.special[1].points == std::vector<CurvePoint>{{q(-11, 4), q(-1, 2)}, {-2, q(-1, 2)}});
}

TEST_CASE("S1 and S2 parametrizations lie on g1 and g2") {
  Scalar h = Scalar::param("h"), qq = Scalar::param("q");
  auto p1 = s_point(1, h, qq), p2 = s_point(2, h, qq);
  CHECK(g1(p1[0], p1[1], p1[2]).is_zero());
  CHECK(g2(p2[0], p2[1], p2[2]).is_zero());
  // preimages invert the first two coordinates
  for (int i : {1, 2}) {
    auto p = s_point(i, h, qq);
    auto [hh, q2] = s_preimage(i, p[0], p[1]);
    CHECK(hh == h);
    CHECK(q2 == qq);
  }
}

TEST_CASE("classification examples") {
  Classification a = classify(0, 0, 0);
  REQUIRE(a.s1);
  CHECK(a.s1->first == 0);
  CHECK(a.top_dim == 1);
  Classification b = classify(0, q(5, 2), 0);
  REQUIRE(b.s2);
  CHECK(*b.s2 == std::pair<Rational, Rational>{5, 0});
  CHECK_FALSE(b.s1);
  CHECK(b.top_dim == 2);
  Classification none = classify(1, 1, 1);
  CHECK_FALSE(none.s1);
  CHECK_FALSE(none.s2);
}

TEST_CASE("w0 eigenvalue at c = -15 factors") {
  Scalar h = Scalar::param("h"), qq = Scalar::param("q");
  Scalar w = w0_eigenvalue(h, qq, -15, Scalar(-3, 2));
  CHECK(w == -Scalar(1, 25) * (h + Scalar(5)) * (h * h - Scalar(5) * h + Scalar(15) * qq));
  CHECK(w0_module_eigenvalue(h, qq, -15, Scalar(-3, 2)) == w);
  CHECK_THROWS_AS(w0_eigenvalue(h, qq, 0, 1), MathError);
}

TEST_CASE("zhu image of the parafermion generator") {
  Algebra N(load_preset("n2", {{"c", Rational(-15)}}));
  Zhu Z(N);
  ZhuPoly w = Z.project(parafermion_generator(N, -15, Scalar(-3, 2)));
  Scalar h = Scalar::param("h"), t = Scalar::param("t");
  CHECK(Z.evaluate(w, {{"H", h}, {"T", t}, {"E", 0}, {"F", 0}}) ==
        -Scalar(1, 25) * (h + Scalar(5)) * (h * h - Scalar(5) * h + Scalar(15) * t));
}

TEST_CASE("forward embedding") {
  auto s = KsSetup::forward();
  KsReport r = verify_embedding(*s, 4);
  CHECK(r.ok());
  CHECK(r.jobs.size() > 20);
  CHECK(s->heisenberg_level() == Scalar(1, 4));
  const Mixed& T = s->target();
  auto nth = [&](const char* a, const char* b, long n) {
    return T.reduce(T.nth(s->map().image(a), s->map().image(b), n));
  };
  CHECK(nth("E", "F", 2) == T.vacuum().scaled(-10));
  CHECK(nth("E", "F", 1) == s->map()(s->source().parse("2 H")));
  CHECK(nth("E", "E", 0).is_zero());
  CHECK(nth("F", "F", 0).is_zero());
}

TEST_CASE("inverse embedding and the top spaces") {
  auto s = KsSetup::inverse();
  KsReport r = verify_embedding(*s, 5);
  CHECK(r.ok());
  CHECK(s->heisenberg_level() == Scalar(-4));
  Scalar h = Scalar::param("h"), qq = Scalar::param("q");
  for (int i : {1, 2}) {
    TopSpaceData d = top_space_data(*s, i, h, qq);
    auto want = s_point(i, h, qq);
    CHECK(d.x == want[0]);
    CHECK(d.y == want[1]);
    CHECK(d.z == want[2]);
    for (auto& j : d.jobs) CHECK_MESSAGE(j.pass, j.job);
  }
}

TEST_CASE("commutant dimensions up to weight 4") {
  for (auto dir : {"forward", "inverse"}) {
    CAPTURE(dir);
    auto s = KsSetup::make(dir);
    CommutantReport c = commutant_check(*s, 4);
    CHECK(c.ok());
    for (auto& j : c.annihilation) CHECK(j.pass);
    REQUIRE_FALSE(c.rows.empty());
    CHECK(c.rows.front().commutant == 1);  // weight 0 holds only the vacuum
  }
}

TEST_CASE("suite reports are deterministic and renderings agree") {
  for (auto name : {"curves", "zhu", "classify-demo"}) {
    CAPTURE(name);
    VerificationReport a = run_suite(name, {}), b = run_suite(name, {});
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.to_text() == b.to_text());
    CHECK(a.ok());
    auto j = a.to_json();
    CHECK(j["checks"].size() == a.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i)
      CHECK(a.to_text().find(j["checks"][i]["identity"].get<std::string>()) != std::string::npos);
  }
  CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
  SuiteOptions bad;
  bad.bindings["k"] = 2;
  CHECK_THROWS_AS(run_suite("ks-forward", bad), std::invalid_argument);
}

TEST_CASE("adjudication picks the default variant") {
  VerificationReport r = run_suite("wsl4sub-axioms", {});
  CHECK(r.ok());
  REQUIRE(r.adjudication.size() == 2);
  CHECK(r.adjudication[0].passes);
  CHECK_FALSE(r.adjudication[1].passes);
}
