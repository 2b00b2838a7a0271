#include "voa/ks.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "voa/flow.hpp"
#include "voa/presets.hpp"

namespace voa {

bool KsReport::ok() const { return failures() == 0; }

std::size_t KsReport::failures() const {
  return static_cast<std::size_t>(std::count_if(jobs.begin(), jobs.end(), [](const KsJob& j) { return !j.pass; }));
}

bool CommutantReport::ok() const {
  return std::all_of(annihilation.begin(), annihilation.end(), [](const KsJob& j) { return j.pass; }) &&
         std::all_of(rows.begin(), rows.end(), [](const CommutantRow& r) { return r.ok(); });
}

// ---------------------------------------------------------------- setups

std::unique_ptr<KsSetup> KsSetup::forward() {
  std::unique_ptr<KsSetup> s(new KsSetup);
  s->direction_ = "forward";
  s->source_ = std::make_unique<Algebra>(load_preset("n2", {{"c", Rational(-15)}}));
  s->factor_ = std::make_unique<Algebra>(load_preset(kDefaultW, {{"k", Rational(-1)}}));
  s->lattice_ = std::make_unique<Lattice>("phim", -1);
  s->ideal_ = std::make_unique<IdealSpan>(*s->factor_);
  s->target_ = std::make_unique<Mixed>(*s->factor_, *s->lattice_, s->ideal_.get());
  const Mixed& M = *s->target_;
  s->map_ = std::make_unique<Homomorphism>(
      *s->source_, M,
      std::map<std::string, MixedState>{{"E", M.parse("2/3 :(G+ e^{phim})")},
                                        {"F", M.parse("- :(G- e^{-phim})")},
                                        {"H", M.parse("-4 J - 5 phim")},
                                        {"T", M.parse("L - 2 :(J J) - 4 :(J phim) - 5/2 :(phim phim)")}});
  s->heis_ = M.parse("J + phim");
  return s;
}

std::unique_ptr<KsSetup> KsSetup::inverse() {
  std::unique_ptr<KsSetup> s(new KsSetup);
  s->direction_ = "inverse";
  s->source_ = std::make_unique<Algebra>(load_preset(kDefaultW, {{"k", Rational(-1)}}));
  s->factor_ = std::make_unique<Algebra>(load_preset("n2", {{"c", Rational(-15)}}));
  s->lattice_ = std::make_unique<Lattice>("phip", 1);
  s->target_ = std::make_unique<Mixed>(*s->factor_, *s->lattice_);
  const Mixed& M = *s->target_;
  MixedState J = M.parse("-1/4 H + 5/4 phip");
  MixedState L = M.parse("T + 1/10 :(H H)");
  L.add(M.normal(J, J), Scalar(2, 5));
  s->map_ = std::make_unique<Homomorphism>(*s->source_, M,
                                           std::map<std::string, MixedState>{{"G+", M.parse(":(E e^{phip})")},
                                                                             {"G-", M.parse("3/2 :(F e^{-phip})")},
                                                                             {"J", J},
                                                                             {"L", L},
                                                                             {"W", M.parse("-3/2 Wpf")}});
  s->heis_ = M.parse("H - phip");
  return s;
}

std::unique_ptr<KsSetup> KsSetup::make(std::string_view direction) {
  if (direction == "forward") return forward();
  if (direction == "inverse") return inverse();
  throw std::invalid_argument("unknown direction '" + std::string(direction) + "' (expected forward or inverse)");
}

Scalar KsSetup::heisenberg_level() const { return target_->nth(heis_, heis_, 1).coeff(MixedKey{}); }

// ---------------------------------------------------------------- embedding

namespace {

Rational source_charge(const Algebra& A, const Monomial& m) {
  auto names = A.charge_names();
  return names.empty() ? Rational(0) : A.charge(m, names.front());
}

long ceil_long(const Rational& r) {
  mpz_class q = r.get_num() / r.get_den();
  if (q * r.get_den() < r.get_num()) q += 1;
  return q.get_si();
}

long floor_long(const Rational& r) {
  mpz_class q = r.get_num() / r.get_den();
  if (q * r.get_den() > r.get_num()) q -= 1;
  return q.get_si();
}

}  // namespace

KsReport verify_embedding(const KsSetup& setup, const Rational& cutoff) {
  const Algebra& S = setup.source();
  const Mixed& T = setup.target();
  const Homomorphism& phi = setup.map();
  KsReport rep;
  rep.name = "ks-" + setup.direction();
  for (unsigned a = 0; a < S.size(); ++a)
    for (unsigned b = 0; b < S.size(); ++b) {
      Monomial ma{make_factor(a, 0)}, mb{make_factor(b, 0)};
      long top = S.max_pole(ma, mb);
      for (long n = 0; n <= top; ++n) {
        Rational w = S.weight(ma) + S.weight(mb) - n - 1;
        if (w > cutoff) continue;
        KsJob job;
        job.job = S.generator(a).name + "_(" + std::to_string(n) + ")" + S.generator(b).name;
        job.weight = w;
        job.charge = source_charge(S, ma) + source_charge(S, mb);
        MixedState got = T.reduce(T.nth(phi.image(S.generator(a).name), phi.image(S.generator(b).name), n));
        MixedState want = T.reduce(phi(S.table(a, b, n)));
        job.pass = got == want;
        job.got = T.str(got);
        job.expected = T.str(want);
        rep.jobs.push_back(std::move(job));
      }
    }
  return rep;
}

// ---------------------------------------------------------------- commutant

namespace {

void partitions(long p, long largest, std::vector<std::uint16_t>& cur, std::vector<std::vector<std::uint16_t>>& out) {
  if (p == 0) {
    out.push_back(cur);
    return;
  }
  for (long j = std::min(p, largest); j >= 1; --j) {
    cur.push_back(static_cast<std::uint16_t>(j));
    partitions(p - j, j, cur, out);
    cur.pop_back();
  }
}

using TaggedKey = std::pair<long, MixedKey>;

}  // namespace

CommutantReport commutant_check(const KsSetup& setup, const Rational& cutoff, long max_sector) {
  const Algebra& S = setup.source();
  const Algebra& V = setup.factor();
  const Lattice& F = setup.lattice();
  const Mixed& T = setup.target();
  const MixedState& h = setup.heisenberg();
  CommutantReport rep;

  auto pole_bound = [&](const MixedKey& k) {
    long p = 0;
    for (auto j : k.second.parts) p += j;
    return ceil_long(V.weight(k.first)) + p + 1;
  };
  auto bound_of = [&](const MixedState& s) {
    long b = 0;
    for (auto& [k, _] : s.terms()) b = std::max(b, pole_bound(k));
    return b;
  };

  for (unsigned g = 0; g < S.size(); ++g) {
    const MixedState& img = setup.map().image(S.generator(g).name);
    for (long n = 0; n <= bound_of(img); ++n) {
      MixedState r = T.reduce(T.nth(h, img, n));
      KsJob job;
      job.job = "h_(" + std::to_string(n) + ")" + S.generator(g).name;
      job.pass = r.is_zero();
      job.expected = "0";
      job.got = T.str(r);
      job.weight = S.generator(g).weight - n;
      job.charge = source_charge(S, Monomial{make_factor(g, 0)});
      rep.annihilation.push_back(std::move(job));
    }
  }

  auto neutral = [&](const MixedKey& k) { return T.nth(h, MixedState(k, Scalar(1)), 0).coeff(k).is_zero(); };
  if (F.signature() > 0) max_sector = std::numeric_limits<long>::max();
  long unit = S.weight_units();
  for (long u = 1; Rational(u, unit) <= cutoff; ++u) {
    Rational w(u, unit);
    w.canonicalize();
    // image vectors, split by lattice sector
    std::map<long, std::vector<MixedState>> images;
    for (auto& m : monomials_of_weight(S, w)) {
      // the lattice sector of an image is the source charge
      if (abs(source_charge(S, m)) > max_sector) continue;
      MixedState r = T.reduce(setup.map()(m));
      if (r.is_zero()) continue;
      long sector = r.terms().begin()->first.second.m;
      if (std::abs(sector) <= max_sector) images[sector].push_back(std::move(r));
    }
    for (long m = 0; m <= std::min<long>(max_sector, 64); m = m > 0 ? -m : 1 - m) {
      Rational lat = F.weight(LatKey{m, {}});
      if (F.signature() > 0 && lat > w) {
        if (m < 0) break;
        continue;
      }
      std::vector<MixedKey> basis;
      for (long p = 0; w - lat - p >= 0; ++p) {
        Rational a = w - lat - p;
        std::vector<Monomial> vs;
        for (auto& mono : monomials_of_weight(V, a)) {
          if (!neutral(MixedKey{mono, LatKey{m, {}}})) continue;
          if (T.ideal()) {
            Expr e(mono, Scalar(1));
            if (T.ideal()->reduce(e, ceil_long(a)) != e) continue;
          }
          vs.push_back(mono);
        }
        if (vs.empty()) continue;
        std::vector<std::vector<std::uint16_t>> parts;
        std::vector<std::uint16_t> cur;
        partitions(p, p, cur, parts);
        for (auto& mono : vs)
          for (auto& pp : parts) basis.push_back(MixedKey{mono, LatKey{m, pp}});
      }
      auto imgs = images.find(m);
      if (basis.empty() && imgs == images.end()) continue;
      CommutantRow row;
      row.weight = w;
      row.sector = m;
      row.ambient = basis.size();
      std::vector<LinComb<TaggedKey>> rows;
      for (auto& b : basis) {
        LinComb<TaggedKey> v;
        MixedState bs(b, Scalar(1));
        for (long n = 0; n <= pole_bound(b); ++n) {
          MixedState r = T.reduce(T.nth(h, bs, n));
          for (auto& [k, c] : r.terms()) v.add(TaggedKey{n, k}, c);
        }
        rows.push_back(std::move(v));
      }
      Echelon<MixedKey> com;
      for (auto& x : kernel(rows)) {
        MixedState s;
        for (std::size_t i = 0; i < x.size(); ++i) s.add(basis[i], x[i]);
        com.insert(s);
      }
      row.commutant = com.rank();
      Echelon<MixedKey> im;
      if (imgs != images.end())
        for (auto& s : imgs->second) {
          im.insert(s);
          if (!com.contains(s)) row.contained = false;
        }
      row.image = im.rank();
      rep.rows.push_back(row);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- curves

Scalar parafermion_c(const Scalar& s) { return Scalar(2) * (s - Scalar(1)) / (s + Scalar(2)); }

Scalar parafermion_lambda(const Scalar& s) {
  return (s + Scalar(1)) / ((s - Scalar(2)) * (Scalar(3) * s + Scalar(4)));
}

Scalar coset_c(const Scalar& k) {
  return -Scalar(4) * (Scalar(5) + Scalar(2) * k) * (Scalar(7) + Scalar(3) * k) / (Scalar(4) + k);
}

Scalar coset_lambda(const Scalar& k) {
  Scalar t = Scalar(2) + k;
  return -(Scalar(3) + k) * (Scalar(4) + k) / (Scalar(3) * t * t * (Scalar(16) + Scalar(5) * k));
}

namespace {

std::optional<std::array<Scalar, 4>> curve_values(const Rational& k, const Rational& s) {
  std::map<std::string, Rational> at{{"k", k}, {"s", s}};
  try {
    return std::array<Scalar, 4>{parafermion_c(Scalar::param("s")).specialize(at),
                                 parafermion_lambda(Scalar::param("s")).specialize(at),
                                 coset_c(Scalar::param("k")).specialize(at),
                                 coset_lambda(Scalar::param("k")).specialize(at)};
  } catch (const MathError&) {
    return std::nullopt;
  }
}

// eliminate `first`, solve for it back from the roots in the other variable
std::vector<CurvePoint> solve(const Poly& p1, const Poly& p2, std::size_t first, std::size_t second, Poly& eliminant) {
  eliminant = resultant(p1, p2, first);
  std::vector<CurvePoint> out;
  std::size_t vk = params::index("k");
  for (auto& r : rational_roots(eliminant)) {
    Poly a = p1.substitute({{second, r}}), b = p2.substitute({{second, r}});
    Poly g = gcd(a, b);
    if (g.is_zero()) throw MathError("the curves share a component through " + params::name(second) + "=" + r.get_str());
    for (auto& t : rational_roots(g)) {
      CurvePoint pt = second == vk ? CurvePoint{r, t} : CurvePoint{t, r};
      auto vals = curve_values(pt.k, pt.s);
      if (!vals || (*vals)[0] != (*vals)[2] || (*vals)[1] != (*vals)[3]) continue;
      out.push_back(pt);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

CurveIntersection intersect_truncation_curves() {
  CurveIntersection r;
  Scalar k = Scalar::param("k"), s = Scalar::param("s");
  std::size_t vk = params::index("k"), vs = params::index("s");
  r.eq_c = (parafermion_c(s) - coset_c(k)).numerator();
  r.eq_lambda = (parafermion_lambda(s) - coset_lambda(k)).numerator();
  r.points = solve(r.eq_c, r.eq_lambda, vs, vk, r.res_s);
  r.points_other = solve(r.eq_c, r.eq_lambda, vk, vs, r.res_k);

  for (Rational c0 : {Rational(0), Rational(-2)}) {
    SpecialCase sc;
    sc.c = c0;
    for (auto& kk : rational_roots((coset_c(k) - Scalar(c0)).numerator()))
      for (auto& ss : rational_roots((parafermion_c(s) - Scalar(c0)).numerator()))
        sc.points.push_back({kk, ss});
    std::sort(sc.points.begin(), sc.points.end());
    if (c0 == 0)
      sc.note = "both cosets are trivial: W_{-5/2} is a Heisenberg algebra, W_{-7/3} the lattice algebra of 2Z, N_1 = C";
    else
      sc.note = "(-11/4,-1/2): both cosets are the singlet algebra M(2); (-2,-1/2): C_{-2} is Virasoro at c=-2 while "
                "N_{-1/2} is W_{-2}(sl3), no coincidence";
    r.special.push_back(std::move(sc));
  }
  return r;
}

// ---------------------------------------------------------------- S1 / S2

Scalar g1(const Scalar& x, const Scalar& y, const Scalar& z) {
  return -Scalar(6) * x * x + Scalar(56, 25) * x * x * x + Scalar(4) * x - Scalar(12, 5) * x * y + Scalar(3) * y + z;
}

Scalar g2(const Scalar& x, const Scalar& y, const Scalar& z) {
  return z + Scalar(1, 25) * (Scalar(-5) + Scalar(2) * x) *
                 (Scalar(75) - Scalar(80) * x + Scalar(28) * x * x - Scalar(30) * y);
}

std::array<Scalar, 3> s_point(int i, const Scalar& h, const Scalar& q) {
  Scalar z = -Scalar(1, 25) * (h + Scalar(5)) * (h * h - Scalar(5) * h + Scalar(15) * q);
  if (i == 1) return {-h / Scalar(4), q + h * h / Scalar(8), z};
  if (i == 2) return {-(h - Scalar(5)) / Scalar(4), q + (h * h - Scalar(2) * h + Scalar(5)) / Scalar(8), z};
  throw std::invalid_argument("set index must be 1 or 2");
}

std::pair<Scalar, Scalar> s_preimage(int i, const Scalar& x, const Scalar& y) {
  if (i == 1) {
    Scalar h = -Scalar(4) * x;
    return {h, y - h * h / Scalar(8)};
  }
  if (i == 2) {
    Scalar h = Scalar(5) - Scalar(4) * x;
    return {h, y - (h * h - Scalar(2) * h + Scalar(5)) / Scalar(8)};
  }
  throw std::invalid_argument("set index must be 1 or 2");
}

Classification classify(const Rational& x, const Rational& y, const Rational& z) {
  Classification c;
  c.x = x;
  c.y = y;
  c.z = z;
  c.g1 = g1(x, y, z).value();
  c.g2 = g2(x, y, z).value();
  if (sgn(c.g1) == 0) {
    auto [h, q] = s_preimage(1, x, y);
    c.s1 = std::make_pair(h.value(), q.value());
  }
  if (sgn(c.g2) == 0) {
    auto [h, q] = s_preimage(2, x, y);
    c.s2 = std::make_pair(h.value(), q.value());
  }
  c.top_dim = c.s1 ? 1 : c.s2 ? 2 : 0;
  return c;
}

Scalar w0_eigenvalue(const Scalar& h, const Scalar& q, const Scalar& c, const Scalar& nu) {
  if (c.is_zero()) throw MathError("W(0) eigenvalue needs c != 0");
  return nu * (Scalar(2) * q - Scalar(6) / c * (q * h + h) - Scalar(2) * (c - Scalar(9)) / (Scalar(3) * c) * h +
               Scalar(6) / (c * c) * h * h * h);
}

// ---------------------------------------------------------------- tensor module

bool TensorModule::odd(const Pbw& m) const {
  bool o = false;
  for (auto x : m) o ^= M_.algebra().generator(M_.mode_gen(x)).odd;
  return o;
}

TensorState TensorModule::state(const ModState& m, const LatState& x) const {
  TensorState out;
  for (auto& [p, c] : m.terms())
    for (auto& [k, d] : x.terms()) out.add(TensorKey{p, k}, c * d);
  return out;
}

TensorState TensorModule::act(const MixedState& a, long n, const TensorState& s) const {
  TensorState out;
  for (auto& [ka, ca] : a.terms())
    for (auto& [ks, cs] : s.terms()) {
      const auto& [u, x] = ka;
      const auto& [m, y] = ks;
      Scalar sign = (F_.odd(x) && odd(m)) ? Scalar(-1) : Scalar(1);
      long lo = n - 1 - F_.max_pole(x, y);
      long hi = u.empty() ? -1 : floor_long(M_.depth(m) + M_.algebra().weight(u) - 1);
      if (u.empty()) lo = std::max(lo, -1L);
      for (long i = lo; i <= hi; ++i) {
        ModState um = u.empty() ? ModState(m, Scalar(1)) : M_.act(Expr(u, Scalar(1)), i, ModState(m, Scalar(1)));
        if (um.is_zero()) continue;
        LatState xy = F_.nth(LatState(x, Scalar(1)), LatState(y, Scalar(1)), n - 1 - i);
        for (auto& [p, c] : um.terms())
          for (auto& [k, d] : xy.terms()) out.add(TensorKey{p, k}, sign * ca * cs * c * d);
      }
    }
  return out;
}

std::string TensorModule::str(const TensorState& s) const {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
    out += coeff_prefix(it->second, first) + M_.str(it->first.first) + " ⊗ " + F_.str(it->first.second);
    first = false;
  }
  return out;
}

namespace {

// e with a·w = e w, or nullopt when a·w is not a multiple of w
std::optional<Scalar> eigenvalue(const TensorState& aw, const TensorState& w) {
  const auto& [key, c] = *w.terms().begin();
  Scalar e = aw.coeff(key) / c;
  if (aw != w.scaled(e)) return std::nullopt;
  return e;
}

}  // namespace

TopSpaceData top_space_data(const KsSetup& inverse, int i, const Scalar& h, const Scalar& q) {
  if (inverse.direction() != "inverse") throw std::invalid_argument("top_space_data needs the inverse embedding");
  if (i != 1 && i != 2) throw std::invalid_argument("set index must be 1 or 2");
  HwModule M(inverse.factor(), HighestWeightSpec::n2_twisted(h, q), 4);
  TensorModule TM(M, inverse.lattice());
  TensorState w = TM.state(M.top(), inverse.lattice().exp(i - 1));
  const Homomorphism& phi = inverse.map();
  auto expected = s_point(i, h, q);
  TopSpaceData out;
  std::string vec = i == 1 ? "v⊗1" : "v⊗e^{phip}";

  struct Zero {
    const char* gen;
    long n;
    const char* label;
    Scalar* slot;
    int dict;
  };
  std::vector<Zero> zeros = {{"J", 0, "J(0)", &out.x, 0}, {"L", 1, "L(0)", &out.y, 1}, {"W", 2, "W(0)", &out.z, 2}};
  for (auto& z : zeros) {
    TensorState r = TM.act(phi.image(z.gen), z.n, w);
    auto e = eigenvalue(r, w);
    KsJob job;
    job.job = std::string(z.label) + " " + vec;
    job.expected = expected[z.dict].str();
    job.got = e ? e->str() : TM.str(r);
    job.pass = e && *e == expected[z.dict];
    if (e) *z.slot = *e;
    out.jobs.push_back(std::move(job));
  }
  // G+(0) and every lowering mode annihilate the vector; for S1 so does G-(0)
  std::vector<std::pair<std::string, long>> kill = {{"G+", 0}, {"G+", 1}, {"J", 1}, {"L", 2}, {"G-", 3}, {"W", 3}};
  if (i == 1) kill.emplace_back("G-", 2);
  auto offsets = display_offsets(kDefaultW);
  for (auto& [g, n] : kill) {
    TensorState r = TM.act(phi.image(g), n, w);
    KsJob job;
    Rational shown = Rational(n) - offsets.at(g);
    job.job = g + "(" + shown.get_str() + ") " + vec;
    job.expected = "0";
    job.got = TM.str(r);
    job.pass = r.is_zero();
    out.jobs.push_back(std::move(job));
  }
  return out;
}

Scalar w0_module_eigenvalue(const Scalar& h, const Scalar& q, const Scalar& c, const Scalar& nu) {
  std::map<std::string, Rational> bind;
  if (c.is_constant())
    bind["c"] = c.value();
  else if (c != Scalar::param("c"))
    throw std::invalid_argument("central charge must be a number or the parameter c");
  Algebra N(load_preset("n2", bind));
  Expr w = parafermion_generator(N, c, nu);
  HwModule M(N, HighestWeightSpec::n2_twisted(h, q), 4);
  ModState r = M.act(w, 2, M.top());
  Scalar e = r.coeff(Pbw{});
  if (r != M.top().scaled(e)) throw MathError("v_{h,q} is not a W(0) eigenvector: " + M.str(r));
  return e;
}

}  // namespace voa
