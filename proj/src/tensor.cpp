#include "voa/tensor.hpp"


namespace voa {

Mixed::Mixed(const Algebra& V, const Lattice& F, const IdealSpan* ideal) : V_(V), F_(F), ideal_(ideal) {
  if (V_.rank_of(F_.field())) throw std::invalid_argument("lattice field '" + F_.field() + "' clashes with a generator");
}

MixedState Mixed::from_v(const Expr& e) const {
  MixedState r;
  for (auto& [m, c] : e.terms()) r.add(MixedKey{m, LatKey{}}, c);
  return r;
}

MixedState Mixed::from_lattice(const LatState& s) const {
  MixedState r;
  for (auto& [k, c] : s.terms()) r.add(MixedKey{Monomial{}, k}, c);
  return r;
}

MixedState Mixed::eval(const RawExpr& r) const {
  RawEvaluator<MixedState> ev;
  ev.vacuum = [this] { return vacuum(); };
  ev.name = [this](const std::string& n, const RawExpr& at) -> MixedState {
    if (n == F_.field()) return from_lattice(F_.phi());
    if (V_.rank_of(n)) return from_v(V_.gen(n));
    if (V_.has_field(n)) return from_v(V_.field(n));
    throw ParseError("unknown name '" + n + "'", at.line, at.column);
  };
  ev.deriv = [this](const MixedState& s, long j) { return deriv(s, static_cast<unsigned>(j)); };
  ev.normal = [this](const MixedState& a, const MixedState& b) { return normal(a, b); };
  ev.exp = [this](long m, const std::string& n, const RawExpr& at) -> MixedState {
    if (n != F_.field()) throw ParseError("'" + n + "' is not the lattice field", at.line, at.column);
    return from_lattice(F_.exp(m));
  };
  return ev(r);
}

MixedState Mixed::parse(std::string_view text) const {
  auto is_name = [this](const std::string& n) {
    return n == F_.field() || V_.rank_of(n).has_value() || V_.has_field(n);
  };
  return eval(parse_raw_expr(text, is_name));
}

MixedState Mixed::nth(const MixedState& a, const MixedState& b, long n) const {
  MixedState out;
  for (auto& [ka, ca] : a.terms())
    for (auto& [kb, cb] : b.terms()) out.add(nth(ka, kb, n), ca * cb);
  return out;
}

MixedState Mixed::nth(const MixedKey& a, const MixedKey& b, long n) const {
  auto key = std::make_tuple(a, b, n);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // (u⊗x)_(n)(w⊗y) = (-1)^{p(x)p(w)} Σ_i u_(i)w ⊗ x_(n-1-i)y
  MixedState out;
  long pv = std::max<long>(V_.max_pole(a.first, b.first), -1);
  long pl = F_.max_pole(a.second, b.second);
  Scalar sign = (F_.odd(a.second) && V_.odd(b.first)) ? Scalar(-1) : Scalar(1);
  for (long i = n - 1 - pl; i <= pv; ++i) {
    const Expr& uw = V_.mono_nth(a.first, b.first, i);
    if (uw.is_zero()) continue;
    LatState xy = F_.nth(a.second, b.second, n - 1 - i);
    for (auto& [m, c] : uw.terms())
      for (auto& [k, d] : xy.terms()) out.add(MixedKey{m, k}, sign * c * d);
  }
  std::unique_lock lock(mutex_);
  cache_.emplace(key, out);
  return out;
}

MixedState Mixed::deriv(const MixedState& a, unsigned times) const {
  MixedState cur = a;
  for (unsigned t = 0; t < times; ++t) {
    MixedState next;
    for (auto& [k, c] : cur.terms()) {
      Expr du = V_.deriv(Expr(k.first, Scalar(1)));
      for (auto& [m, d] : du.terms()) next.add(MixedKey{m, k.second}, c * d);
      LatState dx = F_.deriv(LatState(k.second, Scalar(1)));
      for (auto& [x, d] : dx.terms()) next.add(MixedKey{k.first, x}, c * d);
    }
    cur = std::move(next);
  }
  return cur;
}

MixedState Mixed::reduce(const MixedState& s) const {
  if (!ideal_) return s;
  std::map<LatKey, Expr> parts;
  for (auto& [k, c] : s.terms()) parts[k.second].add(k.first, c);
  MixedState out;
  for (auto& [x, e] : parts) {
    Rational top = 0;
    for (auto& [m, c] : e.terms()) top = std::max(top, V_.weight(m));
    mpz_class cut = top.get_num() / top.get_den();
    if (cut * top.get_den() != top.get_num()) cut += 1;
    Expr r = ideal_->reduce(e, cut.get_si());
    for (auto& [m, c] : r.terms()) out.add(MixedKey{m, x}, c);
  }
  return out;
}

std::string Mixed::str(const MixedKey& k) const {
  if (k.second.is_vacuum()) return V_.str(k.first);
  if (k.first.empty()) return F_.str(k.second);
  return ":(" + V_.str(k.first) + " " + F_.str(k.second) + ")";
}

std::string Mixed::str(const MixedState& s) const {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
    // the lattice printer normalizes φ(-j) as ∂^(j-1)φ
    Scalar c = it->second;
    for (auto p : it->first.second.parts)
      for (long i = 2; i < p; ++i) c /= Scalar(i);
    out += coeff_prefix(c, first) + str(it->first);
    first = false;
  }
  return out;
}

Homomorphism::Homomorphism(const Algebra& source, const Mixed& target, std::map<std::string, MixedState> images)
    : S_(source), T_(target), images_(std::move(images)) {
  for (unsigned g = 0; g < S_.size(); ++g)
    if (!images_.count(S_.generator(g).name))
      throw std::invalid_argument("no image for generator '" + S_.generator(g).name + "'");
}

MixedState Homomorphism::operator()(const Monomial& m) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  MixedState r;
  if (m.empty()) {
    r = T_.vacuum();
  } else if (m.size() == 1) {
    r = T_.deriv(images_.at(S_.generator(factor_gen(m[0])).name), factor_deriv(m[0]));
  } else {
    r = T_.normal((*this)(Monomial{m[0]}), (*this)(Monomial(m.begin() + 1, m.end())));
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(m, r);
  return r;
}

MixedState Homomorphism::operator()(const Expr& e) const {
  MixedState out;
  for (auto& [m, c] : e.terms()) out.add((*this)(m), c);
  return out;
}

}  // namespace voa
