#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "voa/hwmod.hpp"
#include "voa/presets.hpp"
#include "voa/suites.hpp"
#include "voa/zhu.hpp"

using namespace voa;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kInputError = 2 };

struct Common {
  std::string specialize;
  std::string k, c;  // "generic" or a rational
  bool json = false;
  bool timing = false;

  std::map<std::string, Rational> bindings() const {
    auto b = specialize.empty() ? std::map<std::string, Rational>{} : parse_bindings(specialize);
    for (auto [name, text] : {std::pair{"k", &k}, std::pair{"c", &c}}) {
      if (text->empty() || *text == "generic") continue;
      Rational v = parse_rational(*text);
      auto it = b.find(name);
      if (it != b.end() && it->second != v)
        throw std::invalid_argument(std::string("conflicting values for ") + name);
      b[name] = v;
    }
    return b;
  }
};

void add_common(CLI::App* app, Common& o, bool params = true) {
  app->add_option("--specialize", o.specialize, "parameter bindings, e.g. k=-1,c=-15");
  if (params) {
    app->add_option("--k", o.k, "level k (rational or 'generic')");
    app->add_option("--c", o.c, "central charge c (rational or 'generic')");
  }
  app->add_flag("--json", o.json, "machine-readable output");
}

std::optional<Rational> env_cutoff() {
  const char* s = std::getenv("VOA_CUTOFF");
  if (!s || !*s) return std::nullopt;
  return parse_rational(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Presentation load_algebra(const std::string& name, const std::map<std::string, Rational>& b) {
  if (is_preset(name)) return load_preset(name, b);
  return parse_presentation(read_file(name)).specialize(b);
}

int report(const VerificationReport& r, const Common& o) {
  if (o.json)
    std::cout << r.to_json(o.timing).dump(2) << "\n";
  else
    std::cout << r.to_text(o.timing);
  return r.ok() ? kPass : kMismatch;
}

json rational_pair(const Rational& a, const Rational& b) { return json::array({a.get_str(), b.get_str()}); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voa: vertex algebra OPE, Zhu algebra and Kazama-Suzuki computations"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  int status = kPass;

  // run
  Common run_o;
  std::string suite;
  std::optional<std::string> run_cutoff;
  auto* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  run->add_option("--cutoff", run_cutoff, "weight cutoff");
  run->add_flag("--timing", run_o.timing, "include wall-clock time");
  add_common(run, run_o);
  run->callback([&] {
    SuiteOptions opt;
    opt.bindings = run_o.bindings();
    opt.cutoff = run_cutoff ? std::optional(parse_rational(*run_cutoff)) : env_cutoff();
    status = report(run_suite(suite, opt), run_o);
  });

  // ks verify
  Common ks_o;
  std::string direction = "forward";
  std::optional<std::string> ks_cutoff;
  bool commutant = false;
  auto* ks = app.add_subcommand("ks", "Kazama-Suzuki embeddings");
  ks->require_subcommand(1);
  auto* verify = ks->add_subcommand("verify", "check an embedding on all generator pairs");
  verify->add_option("--direction", direction)->check(CLI::IsMember({"forward", "inverse"}));
  verify->add_option("--cutoff", ks_cutoff, "weight cutoff (default 5)");
  verify->add_flag("--commutant", commutant, "also compare the Heisenberg commutant with the image");
  add_common(verify, ks_o);
  verify->callback([&] {
    auto b = ks_o.bindings();
    for (auto [n, v] : {std::pair{"k", Rational(-1)}, std::pair{"c", Rational(-15)}})
      if (b.count(n) && b[n] != v) throw std::invalid_argument("the embeddings exist only at k=-1, c=-15");
    Rational cut = ks_cutoff ? parse_rational(*ks_cutoff) : env_cutoff().value_or(5);
    auto setup = KsSetup::make(direction);
    KsReport r = verify_embedding(*setup, cut);
    std::optional<CommutantReport> cr;
    if (commutant) cr = commutant_check(*setup, cut);
    bool ok = r.ok() && (!cr || cr->ok());
    if (ks_o.json) {
      json j = to_json(r);
      j["level"] = setup->heisenberg_level().str();
      if (cr) {
        json rows = json::array();
        for (auto& x : cr->annihilation) j["jobs"].push_back(to_json(x));
        for (auto& row : cr->rows)
          rows.push_back({{"weight", row.weight.get_str()}, {"sector", row.sector}, {"ambient", row.ambient},
                          {"commutant", row.commutant}, {"image", row.image},
                          {"status", row.ok() ? "pass" : "fail"}});
        j["commutant"] = rows;
      }
      j["status"] = ok ? "pass" : "fail";
      std::cout << j.dump(2) << "\n";
    } else {
      for (auto& x : r.jobs)
        std::cout << (x.pass ? "pass  " : "FAIL  ") << x.job << " = " << x.got
                  << (x.pass ? "" : "  (expected " + x.expected + ")") << "\n";
      std::cout << "level " << setup->heisenberg_level().str() << "\n";
      if (cr) {
        for (auto& x : cr->annihilation) std::cout << (x.pass ? "pass  " : "FAIL  ") << x.job << " = " << x.got << "\n";
        for (auto& row : cr->rows)
          std::cout << (row.ok() ? "pass  " : "FAIL  ") << "weight " << row.weight.get_str() << " sector "
                    << row.sector << ": ambient " << row.ambient << ", commutant " << row.commutant << ", image "
                    << row.image << "\n";
      }
      std::cout << "result: " << (ok ? "pass" : "fail") << "\n";
    }
    status = ok ? kPass : kMismatch;
  });

  // curves intersect
  Common cv_o;
  auto* curves = app.add_subcommand("curves", "truncation curves");
  curves->require_subcommand(1);
  auto* inter = curves->add_subcommand("intersect", "rational intersections of the two truncation curves");
  add_common(inter, cv_o, false);
  inter->callback([&] {
    CurveIntersection r = intersect_truncation_curves();
    if (cv_o.json) {
      json j;
      j["points"] = json::array();
      for (auto& p : r.points) j["points"].push_back(rational_pair(p.k, p.s));
      j["order_stable"] = r.order_stable();
      j["special"] = json::array();
      for (auto& sc : r.special) {
        json ps = json::array();
        for (auto& p : sc.points) ps.push_back(rational_pair(p.k, p.s));
        j["special"].push_back({{"c", sc.c.get_str()}, {"points", ps}, {"note", sc.note}});
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "(k, s) with c_C(k) = c_N(s) and lambda_C(k) = lambda_N(s):\n";
      for (auto& p : r.points)
        std::cout << "  k = " << p.k.get_str() << ", s = " << p.s.get_str()
                  << ", c = " << coset_c(p.k).str() << "\n";
      for (auto& sc : r.special) {
        std::cout << "c = " << sc.c.get_str() << " (" << sc.note << "):\n";
        for (auto& p : sc.points) std::cout << "  k = " << p.k.get_str() << ", s = " << p.s.get_str() << "\n";
      }
    }
    status = r.order_stable() ? kPass : kMismatch;
  });

  // classify
  Common cl_o;
  std::string xs, ys, zs;
  auto* cls = app.add_subcommand("classify", "membership of (x,y,z) in S1 and S2");
  cls->add_option("--x", xs)->required();
  cls->add_option("--y", ys)->required();
  cls->add_option("--z", zs)->required();
  add_common(cls, cl_o, false);
  cls->callback([&] {
    Classification r = classify(parse_rational(xs), parse_rational(ys), parse_rational(zs));
    auto hq = [](auto& o) { return o ? json{{"h", o->first.get_str()}, {"q", o->second.get_str()}} : json(nullptr); };
    if (cl_o.json) {
      json j{{"x", r.x.get_str()}, {"y", r.y.get_str()}, {"z", r.z.get_str()}, {"g1", r.g1.get_str()},
             {"g2", r.g2.get_str()}, {"S1", hq(r.s1)}, {"S2", hq(r.s2)}, {"top_dim", r.top_dim}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "g1 = " << r.g1.get_str() << ", g2 = " << r.g2.get_str() << "\n";
      if (r.s1) std::cout << "in S1: h = " << r.s1->first.get_str() << ", q = " << r.s1->second.get_str() << "\n";
      if (r.s2) std::cout << "in S2: h = " << r.s2->first.get_str() << ", q = " << r.s2->second.get_str() << "\n";
      if (!r.s1 && !r.s2) std::cout << "in neither S1 nor S2\n";
      std::cout << "top space dimension " << r.top_dim << "\n";
    }
  });

  // singular
  Common sg_o;
  std::string sg_alg = kDefaultW, sg_weight, sg_charge = "0";
  std::vector<std::string> zero_modes;
  auto* sing = app.add_subcommand("singular", "singular vectors in the vacuum module");
  sing->add_option("--algebra", sg_alg, "preset or presentation file");
  sing->add_option("--weight", sg_weight)->required();
  sing->add_option("--charge", sg_charge);
  sing->add_option("--zero-mode", zero_modes, "generator whose zero-shift mode must also annihilate");
  add_common(sing, sg_o);
  sing->callback([&] {
    Algebra A(load_algebra(sg_alg, sg_o.bindings()));
    SingularResult r = vacuum_singular_vectors(A, parse_rational(sg_weight), parse_rational(sg_charge),
                                               {zero_modes.begin(), zero_modes.end()});
    if (sg_o.json) {
      json basis = json::array();
      for (auto& e : r.vacuum) basis.push_back(A.str(e));
      std::cout << json{{"space_dim", r.space_dim}, {"kernel", basis}}.dump(2) << "\n";
    } else {
      std::cout << "weight space dimension " << r.space_dim << ", kernel dimension " << r.vacuum.size() << "\n";
      for (auto& e : r.vacuum) std::cout << A.str(e) << "\n";
    }
  });

  // zhu
  Common zh_o;
  std::string zh_alg = kDefaultW, zh_expr;
  auto* zhu = app.add_subcommand("zhu", "image of a state in the Zhu algebra");
  zhu->add_option("--algebra", zh_alg, "preset or presentation file");
  zhu->add_option("--expr", zh_expr, "a state, or [a,b] for the commutator [a]*[b] - [b]*[a]")->required();
  add_common(zhu, zh_o);
  zhu->callback([&] {
    Algebra A(load_algebra(zh_alg, zh_o.bindings()));
    Zhu Z(A);
    ZhuPoly p;
    std::vector<std::string> trace;
    std::string e = zh_expr;
    if (e.size() > 2 && e.front() == '[' && e.back() == ']') {
      std::size_t depth = 0, comma = std::string::npos;
      for (std::size_t i = 1; i + 1 < e.size(); ++i) {
        if (e[i] == '(' || e[i] == '[') ++depth;
        if (e[i] == ')' || e[i] == ']') --depth;
        if (e[i] == ',' && depth == 0) comma = i;
      }
      if (comma == std::string::npos) {
        Expr a = A.parse(e.substr(1, e.size() - 2));
        p = Z.project(a);
        trace = Z.trace(a);
      } else {
        Expr a = A.parse(e.substr(1, comma - 1)), b = A.parse(e.substr(comma + 1, e.size() - comma - 2));
        p = Z.mul(Z.project(a), Z.project(b)) - Z.mul(Z.project(b), Z.project(a));
      }
    } else {
      Expr a = A.parse(e);
      p = Z.project(a);
      trace = Z.trace(a);
    }
    if (zh_o.json)
      std::cout << json{{"expr", zh_expr}, {"zhu", Z.str(p)}, {"trace", trace}}.dump(2) << "\n";
    else
      std::cout << Z.str(p) << "\n";
  });

  // parse / print
  Common pa_o;
  std::string pa_file;
  auto* parse = app.add_subcommand("parse", "validate a presentation file and print its canonical form");
  parse->add_option("file", pa_file)->required();
  add_common(parse, pa_o, false);
  parse->callback([&] {
    Algebra A(parse_presentation(read_file(pa_file)).specialize(pa_o.bindings()));
    auto issues = A.validate();
    if (pa_o.json) {
      std::cout << json{{"text", A.print()}, {"issues", issues}}.dump(2) << "\n";
    } else {
      std::cout << A.print();
      for (auto& i : issues) std::cerr << "issue: " << i << "\n";
    }
    status = issues.empty() ? kPass : kMismatch;
  });

  Common pr_o;
  std::string pr_name;
  auto* print = app.add_subcommand("print", "print a preset in the presentation format");
  print->add_option("preset", pr_name)->required();
  add_common(print, pr_o);
  print->callback([&] {
    if (!is_preset(pr_name)) throw std::invalid_argument("unknown preset '" + pr_name + "'");
    Presentation p = load_preset(pr_name, pr_o.bindings());
    std::string text = p.lattice ? preset_text(pr_name) : Algebra(std::move(p)).print();
    if (pr_o.json)
      std::cout << json{{"preset", pr_name}, {"text", text}}.dump(2) << "\n";
    else
      std::cout << text;
  });

  auto* list = app.add_subcommand("list", "list presets and suites");
  list->callback([&] {
    std::cout << "presets:";
    for (auto& n : preset_names()) std::cout << " " << n;
    std::cout << "\nsuites:";
    for (auto& n : suite_names()) std::cout << " " << n;
    std::cout << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  } catch (const ParseError& e) {
    std::string msg = e.what();
    std::string at = "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column());
    for (std::size_t p; (p = msg.find(at + ": ")) != std::string::npos;) msg.erase(p, at.size() + 2);
    std::cerr << "parse error at " << at << ": " << msg << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "invalid presentation: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return status;
}
