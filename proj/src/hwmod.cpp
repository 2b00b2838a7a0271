#include "voa/hwmod.hpp"

#include <algorithm>
#include <functional>

namespace voa {

namespace {

constexpr long kBias = 1L << 20;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HighestWeightSpec HighestWeightSpec::w_algebra(const Scalar& x, const Scalar& y, const Scalar& z) {
  HighestWeightSpec s;
  s.eigen["J"] = {0, x};
  s.eigen["L"] = {1, y};
  s.eigen["W"] = {2, z};
  s.annihilate.insert("G+");
  return s;
}

HighestWeightSpec HighestWeightSpec::n2_twisted(const Scalar& h, const Scalar& q) {
  HighestWeightSpec s;
  s.eigen["H"] = {0, h};
  s.eigen["T"] = {1, q};
  return s;
}

HwModule::HwModule(const Algebra& A, HighestWeightSpec spec, const Rational& cutoff)
    : A_(A), spec_(std::move(spec)), cutoff_(cutoff) {
  if (A_.size() > 255) throw std::invalid_argument("too many generators for the module engine");
  auto names = A_.charge_names();
  if (!names.empty()) grading_ = names.front();
  long unit = A_.weight_units();
  for (unsigned g = 0; g < A_.size(); ++g) {
    const auto& gs = A_.generator(g);
    wu_.push_back(A_.scaled_weight(Monomial{make_factor(g, 0)}));
    int role = 0;
    Scalar ev;
    if (auto it = spec_.eigen.find(gs.name); it != spec_.eigen.end()) {
      if (wu_[g] % unit != 0 || it->second.first != wu_[g] / unit - 1)
        throw std::invalid_argument("eigenvalue given for " + gs.name + "_(" + std::to_string(it->second.first) +
                                    "), which is not a zero mode");
      role = 1;
      ev = it->second.second;
    } else if (spec_.annihilate.count(gs.name)) {
      role = 2;
    }
    zero_role_.push_back(role);
    eigen_.push_back(ev);
  }
  for (auto& [n, _] : spec_.eigen)
    if (!A_.rank_of(n)) throw std::invalid_argument("unknown generator '" + n + "' in highest-weight data");
}

ModeCode HwModule::code(unsigned gen, long n) const {
  long s = wu_.at(gen) - (n + 1) * A_.weight_units();
  return static_cast<ModeCode>(((s + kBias) << 8) | (255 - gen));
}

long HwModule::scaled_shift(ModeCode c) const { return static_cast<long>(c >> 8) - kBias; }

long HwModule::mode_index(ModeCode c) const { return (wu_[mode_gen(c)] - scaled_shift(c)) / A_.weight_units() - 1; }

Rational HwModule::shift(ModeCode c) const { return Rational(scaled_shift(c)) / A_.weight_units(); }

Rational HwModule::depth(const Pbw& m) const {
  long s = 0;
  for (auto c : m) s += scaled_shift(c);
  return Rational(s) / A_.weight_units();
}

Rational HwModule::charge(const Pbw& m, const std::string& grading) const {
  Rational q = 0;
  for (auto c : m) q += A_.charge(Monomial{make_factor(mode_gen(c), 0)}, grading);
  return q;
}

void HwModule::check(const ModState& s) const {
  for (auto& [m, _] : s.terms())
    if (depth(m) > cutoff_)
      throw std::out_of_range("module state " + str(m) + " exceeds the weight cutoff " + cutoff_.get_str());
}

ModState HwModule::act(const std::string& gen, long n, const ModState& w) const { return act(A_.rank(gen), n, w); }

ModState HwModule::act(unsigned gen, long n, const ModState& w) const {
  check(w);
  ModState r = act_code(code(gen, n), w);
  check(r);
  return r;
}

ModState HwModule::act(const Expr& a, long n, const ModState& w) const {
  check(w);
  ModState r;
  for (auto& [m, c] : a.terms()) r.add(act_mono(m, n, w), c);
  check(r);
  return r;
}

ModState HwModule::act_code(ModeCode x, const ModState& s) const {
  ModState r;
  for (auto& [m, c] : s.terms()) r.add(act_code(x, m), c);
  return r;
}

ModState HwModule::act_code(ModeCode x, const Pbw& m) const {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(x, m);
  if (auto it = gen_cache_.find(key); it != gen_cache_.end()) return it->second;

  unsigned g = mode_gen(x);
  long s = scaled_shift(x);
  bool creates = s > 0 || (s == 0 && zero_role_[g] == 0);
  ModState out;
  if (m.empty()) {
    if (creates)
      out.add(Pbw{x}, Scalar(1));
    else if (s == 0 && zero_role_[g] == 1)
      out.add(Pbw{}, eigen_[g]);
  } else {
    ModeCode y = m.front();
    Pbw rest(m.begin() + 1, m.end());
    if (creates && x > y) {
      Pbw p{x};
      p.insert(p.end(), m.begin(), m.end());
      out.add(p, Scalar(1));
    } else if (creates && x == y) {
      if (A_.generator(g).odd) {
        out.add(bracket(x, x, ModState(rest, Scalar(1))), Scalar(1, 2));
      } else {
        Pbw p{x};
        p.insert(p.end(), m.begin(), m.end());
        out.add(p, Scalar(1));
      }
    } else {
      bool both_odd = A_.generator(g).odd && A_.generator(mode_gen(y)).odd;
      ModState xr = act_code(x, rest);
      out.add(act_code(y, xr), both_odd ? Scalar(-1) : Scalar(1));
      out.add(bracket(x, y, ModState(rest, Scalar(1))));
    }
  }
  gen_cache_.emplace(key, out);
  return out;
}

// [x, y] rest with [a_(m), b_(n)] = Σ_j C(m,j) (a_(j)b)_(m+n-j)
ModState HwModule::bracket(ModeCode x, ModeCode y, const ModState& rest) const {
  unsigned a = mode_gen(x), b = mode_gen(y);
  long m = mode_index(x), n = mode_index(y);
  ModState out;
  long top = A_.max_pole(Monomial{make_factor(a, 0)}, Monomial{make_factor(b, 0)});
  for (long j = 0; j <= top; ++j) {
    Scalar c = binomial(m, j);
    if (c.is_zero()) continue;
    const Expr& ab = A_.table(a, b, j);
    for (auto& [mono, d] : ab.terms()) out.add(act_mono(mono, m + n - j, rest), c * d);
  }
  return out;
}

ModState HwModule::act_mono(const Monomial& a, long k, const ModState& w) const {
  ModState r;
  for (auto& [m, c] : w.terms()) r.add(act_mono(a, k, m), c);
  return r;
}

ModState HwModule::act_mono(const Monomial& a, long k, const Pbw& w) const {
  if (a.empty()) return k == -1 ? ModState(w, Scalar(1)) : ModState();
  if (a.size() == 1) {
    unsigned d = factor_deriv(a[0]);
    Rational f = falling(k, d);
    if (d % 2) f = -f;
    if (f == 0) return ModState();
    return act_code(code(factor_gen(a[0]), k - static_cast<long>(d)), w).scaled(Scalar(f));
  }
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(a, k, w);
  if (auto it = mono_cache_.find(key); it != mono_cache_.end()) return it->second;

  // (:uX:)_(k) = Σ_i u_(-1-i) X_(k+i) + p Σ_i X_(k-1-i) u_(i)
  Monomial u{a.front()}, X(a.begin() + 1, a.end());
  long unit = A_.weight_units();
  long dep = 0;
  for (auto c : w) dep += scaled_shift(c);
  long wx = A_.scaled_weight(X), wuu = A_.scaled_weight(u);
  bool sign = A_.odd(u) && A_.odd(X);
  ModState out;
  for (long i = 0; i <= floor_div(wx + dep, unit) - k - 1; ++i) {
    ModState xw = act_mono(X, k + i, w);
    if (!xw.is_zero()) out.add(act_mono(u, -1 - i, xw));
  }
  for (long i = 0; i <= floor_div(wuu + dep, unit) - 1; ++i) {
    ModState uw = act_mono(u, i, w);
    if (!uw.is_zero()) out.add(act_mono(X, k - 1 - i, uw), sign ? Scalar(-1) : Scalar(1));
  }
  mono_cache_.emplace(key, out);
  return out;
}

std::vector<Pbw> HwModule::basis(const Rational& depth_, const Rational& charge_) const {
  long unit = A_.weight_units();
  Rational sd = depth_ * unit;
  if (sd.get_den() != 1 || sd < 0) return {};
  long d = sd.get_num().get_si();
  std::vector<ModeCode> creators, zero;
  for (unsigned g = 0; g < A_.size(); ++g) {
    for (long s = wu_[g] % unit == 0 ? 0 : (wu_[g] % unit + unit) % unit; s <= d; s += unit) {
      long n = (wu_[g] - s) / unit - 1;
      ModeCode c = code(g, n);
      if (s > 0)
        creators.push_back(c);
      else if (zero_role_[g] == 0)
        zero.push_back(c);
    }
  }
  std::sort(creators.rbegin(), creators.rend());
  if (zero.size() > 1) throw std::invalid_argument("several zero-shift creation modes; bases are not finite");

  std::vector<Pbw> out;
  Pbw cur;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (left == 0) {
      Rational q = charge(cur, grading_);
      Pbw full = cur;
      if (!zero.empty()) {
        Rational zq = charge(Pbw{zero[0]}, grading_);
        if (zq == 0) throw std::invalid_argument("zero-shift creation mode of charge zero");
        Rational cnt = (charge_ - q) / zq;
        if (cnt.get_den() != 1 || cnt < 0) return;
        long c = cnt.get_num().get_si();
        if (A_.generator(mode_gen(zero[0])).odd && c > 1) return;
        full.insert(full.end(), c, zero[0]);
      } else if (q != charge_) {
        return;
      }
      out.push_back(full);
      return;
    }
    for (std::size_t j = i; j < creators.size(); ++j) {
      long s = scaled_shift(creators[j]);
      if (s > left) continue;
      bool odd = A_.generator(mode_gen(creators[j])).odd;
      if (odd && !cur.empty() && cur.back() == creators[j]) continue;
      cur.push_back(creators[j]);
      rec(j, left - s);
      cur.pop_back();
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

std::string HwModule::str(const Pbw& m) const {
  std::string s;
  for (auto c : m) s += A_.generator(mode_gen(c)).name + "_(" + std::to_string(mode_index(c)) + ") ";
  return s + "v";
}

std::string HwModule::str(const ModState& st) const {
  if (st.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = st.terms().rbegin(); it != st.terms().rend(); ++it) {
    out += coeff_prefix(it->second, first) + str(it->first);
    first = false;
  }
  return out;
}

namespace {

Monomial gen_mono(unsigned g) { return Monomial{make_factor(g, 0)}; }

// lowering modes g_(n) with -d <= shift < 0 (scaled units)
std::vector<std::pair<unsigned, long>> lowering(const Algebra& A, long d) {
  std::vector<std::pair<unsigned, long>> out;
  long unit = A.weight_units();
  for (unsigned g = 0; g < A.size(); ++g) {
    long wu = A.scaled_weight(gen_mono(g));
    for (long s = -1; s >= -d; --s)
      if ((wu - s) % unit == 0) out.emplace_back(g, (wu - s) / unit - 1);
  }
  return out;
}

template <class Key, class State>
std::vector<State> combine(const std::vector<std::vector<Scalar>>& ker, const std::vector<Key>& basis) {
  std::vector<State> out;
  for (auto& x : ker) {
    State v;
    for (std::size_t i = 0; i < x.size(); ++i) v.add(basis[i], x[i]);
    out.push_back(v);
  }
  return out;
}

}  // namespace

SingularResult vacuum_singular_vectors(const Algebra& A, const Rational& weight, const Rational& charge,
                                       const std::set<std::string>& zero_annihilators) {
  auto names = A.charge_names();
  std::vector<Monomial> basis;
  for (auto& m : monomials_of_weight(A, weight))
    if (names.empty() ? charge == 0 : A.charge(m, names.front()) == charge) basis.push_back(m);
  Rational sd = weight * A.weight_units();
  auto ops = lowering(A, sd.get_num().get_si());
  for (auto& z : zero_annihilators) {
    unsigned g = A.rank(z);
    long wu = A.scaled_weight(gen_mono(g));
    if (wu % A.weight_units() == 0) ops.emplace_back(g, wu / A.weight_units() - 1);
  }
  using Key = std::pair<std::size_t, Monomial>;
  std::vector<LinComb<Key>> images;
  for (auto& b : basis) {
    LinComb<Key> img;
    for (std::size_t o = 0; o < ops.size(); ++o) {
      Expr r = A.nth(Expr(gen_mono(ops[o].first), Scalar(1)), Expr(b, Scalar(1)), ops[o].second);
      for (auto& [m, c] : r.terms()) img.add(Key{o, m}, c);
    }
    images.push_back(img);
  }
  SingularResult res;
  res.space_dim = basis.size();
  res.vacuum = combine<Monomial, Expr>(kernel(images), basis);
  return res;
}

SingularResult singular_vectors(const HwModule& M, const Rational& depth, const Rational& charge) {
  const Algebra& A = M.algebra();
  auto basis = M.basis(depth, charge);
  Rational sd = depth * A.weight_units();
  auto ops = lowering(A, sd.get_num().get_si());
  // zero modes that annihilate v must also annihilate a singular vector
  for (auto& name : M.spec().annihilate) {
    unsigned g = A.rank(name);
    long wu = A.scaled_weight(gen_mono(g));
    if (wu % A.weight_units() == 0) ops.emplace_back(g, wu / A.weight_units() - 1);
  }
  using Key = std::pair<std::size_t, Pbw>;
  std::vector<LinComb<Key>> images;
  for (auto& b : basis) {
    LinComb<Key> img;
    for (std::size_t o = 0; o < ops.size(); ++o) {
      ModState r = M.act(ops[o].first, ops[o].second, ModState(b, Scalar(1)));
      for (auto& [m, c] : r.terms()) img.add(Key{o, m}, c);
    }
    images.push_back(img);
  }
  SingularResult res;
  res.space_dim = basis.size();
  res.module = combine<Pbw, ModState>(kernel(images), basis);
  return res;
}

bool gplus_power_singular(long n, long s, const Rational& k) {
  for (long i = 1; i <= n - 1; ++i)
    if (Rational(i) * (k + n - 1) == s) return true;
  return false;
}

Poly gplus_power_locus(const Algebra& A, long s) {
  unsigned gp = A.rank("G+");
  Expr v = A.gen("G+");
  for (long i = 1; i < s; ++i) v = A.normal(A.gen("G+"), v);
  Poly g;
  Rational w = A.weight(v.terms().begin()->first);
  long d = Rational(w * A.weight_units()).get_num().get_si();
  auto ops = lowering(A, d);
  ops.emplace_back(gp, A.scaled_weight(gen_mono(gp)) / A.weight_units() - 1);
  for (auto& [op, n] : ops) {
    Expr r = A.nth(Expr(gen_mono(op), Scalar(1)), v, n);
    for (auto& [m, c] : r.terms()) g = gcd(g, c.numerator());
  }
  return g;
}

Scalar top_space_factor(const HwModule& M, long i) {
  const Algebra& A = M.algebra();
  unsigned gm = A.rank("G-"), gp = A.rank("G+");
  long nm = A.scaled_weight(gen_mono(gm)) / A.weight_units() - 1;
  long np = A.scaled_weight(gen_mono(gp)) / A.weight_units() - 1;
  ModState below = M.top();
  for (long j = 1; j < i; ++j) below = M.act(gm, nm, below);
  ModState r = M.act(gp, np, M.act(gm, nm, below));
  if (r.is_zero()) return Scalar();
  if (below.size() != 1 || r.size() != 1 || r.terms().begin()->first != below.terms().begin()->first)
    throw std::logic_error("top space is not spanned by powers of G-(0)v");
  return r.terms().begin()->second / below.terms().begin()->second;
}

long top_space_dim(const Algebra& W, const Rational& x, const Rational& y, const Rational& z) {
  HwModule M(W, HighestWeightSpec::w_algebra(x, y, z), 0);
  for (long i = 1; i <= 2; ++i)
    if (top_space_factor(M, i).is_zero()) return i;
  throw MathError("no highest weight module over the simple quotient with (x,y,z) = (" + x.get_str() + ", " +
                  y.get_str() + ", " + z.get_str() + ")");
}

}  // namespace voa
