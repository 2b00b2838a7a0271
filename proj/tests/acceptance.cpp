#include <chrono>
#include <functional>
#include <iostream>

#include "voa/checks.hpp"
#include "voa/flow.hpp"
#include "voa/hwmod.hpp"
#include "voa/presets.hpp"
#include "voa/suites.hpp"

using namespace voa;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = budget <= 0 || secs <= budget;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << o.detail << (in_time ? "" : "; over time budget") << "; "
            << secs << "s)" << std::endl;
}

Outcome suite(const std::string& name, SuiteOptions opt = {}) {
  VerificationReport r = run_suite(name, opt);
  std::string d = std::to_string(r.checks.size()) + " checks, " + std::to_string(r.failures()) + " failures";
  for (auto& c : r.checks)
    if (!c.pass) {
      d += "; first failure " + c.identity;
      break;
    }
  return {r.ok(), d};
}

}  // namespace

int main() {
  criterion("central charge c_k at k=-1 and k=-7/3", 1, [] {
    Scalar a = central_charge_w(-1), b = central_charge_w(Rational(-7, 3));
    return Outcome{a == Scalar(-15) && b == Scalar(1), "c_{-1} = " + a.str() + ", c_{-7/3} = " + b.str()};
  });

  criterion("N=2 skew symmetry and jacobi at generic c, weight <= 6", 60, [] {
    SuiteOptions o;
    o.cutoff = Rational(6);
    return suite("n2-axioms", o);
  });

  criterion("table adjudication: one variant passes jacobi, its G+_(0)G- matches at k=-1", 0, [] {
    SuiteOptions o;
    o.cutoff = Rational(6);
    return suite("wsl4sub-axioms", o);
  });

  criterion("forward embedding modulo the ideal on all generator pairs", 300, [] {
    auto s = KsSetup::forward();
    KsReport r = verify_embedding(*s, 5);
    const Mixed& T = s->target();
    auto nth = [&](const char* a, const char* b, long n) {
      return T.reduce(T.nth(s->map().image(a), s->map().image(b), n));
    };
    auto img = [&](const char* e) { return T.reduce(s->map()(s->source().parse(e))); };
    bool shown = nth("E", "F", 2) == T.vacuum().scaled(-10) && nth("E", "F", 1) == img("2 H") &&
                 nth("E", "F", 0) == img("2 T + d(H)") && nth("E", "E", 0).is_zero() && nth("F", "F", 0).is_zero();
    return Outcome{r.ok() && shown, std::to_string(r.jobs.size()) + " products, " + std::to_string(r.failures()) +
                                        " failures, displayed products " + (shown ? "match" : "differ")};
  });

  criterion("inverse embedding on all generator pairs, W rows included", 0, [] {
    auto s = KsSetup::inverse();
    KsReport r = verify_embedding(*s, 5);
    const Mixed& T = s->target();
    auto nth = [&](long n) { return T.reduce(T.nth(s->map().image("G+"), s->map().image("G-"), n)); };
    auto img = [&](const char* e) { return T.reduce(s->map()(s->source().parse(e))); };
    bool shown = nth(3) == T.vacuum().scaled(15) && nth(2) == img("12 J") &&
                 nth(1) == img("-3 Lperp + 24/5 :(J J) + 6 d(J)") &&
                 nth(0) == img("W + 32/25 :(J J J) - 12/5 :(J Lperp) + 24/5 :(d(J) J) - 3/2 d(Lperp) + 2 d^2(J)");
    std::size_t w = 0;
    for (auto& j : r.jobs)
      if (j.job.find('W') != std::string::npos) ++w;
    return Outcome{r.ok() && shown, std::to_string(r.jobs.size()) + " products (" + std::to_string(w) +
                                        " with W), " + std::to_string(r.failures()) + " failures"};
  });

  criterion("zhu algebra: commutator, [W] projection and the listed reductions", 0, [] { return suite("zhu"); });

  criterion("singular vectors: (G+)^2 singular at k=-1, criterion agrees with kernels", 0, [] {
    Algebra U(load_preset("wsl4sub"));
    Algebra W1(load_preset("wsl4sub", {{"k", Rational(-1)}})), W0(load_preset("wsl4sub", {{"k", Rational(0)}}));
    bool ok = vacuum_singular_vectors(W1, 2, 2, {"G+"}).vacuum.size() == 1 &&
              vacuum_singular_vectors(W1, 1, 1, {"G+"}).vacuum.empty();
    std::string d;
    for (long s = 1; s <= 3; ++s) {
      bool k1 = !vacuum_singular_vectors(W1, s, s, {"G+"}).vacuum.empty();
      bool k0 = !vacuum_singular_vectors(W0, s, s, {"G+"}).vacuum.empty();
      bool kg = !vacuum_singular_vectors(U, s, s, {"G+"}).vacuum.empty();
      ok = ok && k1 == gplus_power_singular(4, s, -1) && k0 == gplus_power_singular(4, s, 0) && !kg;
      d += (d.empty() ? "" : ", ") + std::string("s=") + std::to_string(s) + ": " + (k1 ? "1" : "0") +
           (k0 ? "1" : "0") + (kg ? "1" : "0");
    }
    return Outcome{ok, "kernel at k=-1,0,generic " + d};
  });

  criterion("curve intersections: five rational points and the c=0,-2 cases", 0, [] { return suite("curves"); });

  criterion("classification identities and w0 factorization", 0, [] { return suite("classify-demo"); });

  criterion("spectral flow automorphisms and composition, l,m in [-2,2]", 0, [] {
    std::size_t bad = 0, runs = 0;
    for (std::string p : {"n2", "wsl4sub"}) {
      Algebra A(load_preset(p));
      auto S = SpectralFlow::for_preset(A, p);
      std::vector<Expr> tests{A.vacuum()};
      for (unsigned g = 0; g < A.size(); ++g) tests.push_back(A.gen(A.generator(g).name));
      for (long l = -2; l <= 2; ++l) {
        bad += S.automorphism_failures(l, -1, 2, tests).size();
        for (long m = -2; m <= 2; ++m) bad += S.composition_failures(l, m, -2, 2).size(), ++runs;
      }
    }
    return Outcome{bad == 0, std::to_string(runs) + " composition pairs, " + std::to_string(bad) + " failures"};
  });

  criterion("finite-weight substitute: commutant dimensions to weight 5 and the top spaces", 0, [] {
    SuiteOptions o;
    o.cutoff = Rational(5);
    VerificationReport f = run_suite("ks-forward", o), i = run_suite("ks-inverse", o);
    std::size_t rows = 0;
    for (auto* r : {&f, &i})
      for (auto& c : r->checks)
        if (c.anchor == "commutant" || c.anchor == "top space") ++rows;
    return Outcome{f.ok() && i.ok(), std::to_string(rows) + " commutant and top-space checks, " +
                                         std::to_string(f.failures() + i.failures()) + " failures"};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
