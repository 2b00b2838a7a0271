#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

// A factor ∂^d g is packed so that ascending codes give the canonical order:
// generator rank ascending, derivative order descending.
using Factor = std::uint32_t;
using Monomial = std::vector<Factor>;

inline Factor make_factor(unsigned gen, unsigned deriv) { return (gen << 16) | (0xFFFFu - deriv); }
inline unsigned factor_gen(Factor f) { return f >> 16; }
inline unsigned factor_deriv(Factor f) { return 0xFFFFu - (f & 0xFFFFu); }

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto f : m) h = (h ^ f) * 1099511628211ull;
    return h;
  }
};

// Finite linear combination of keys with nonzero Scalar coefficients.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, Scalar>;

  LinComb() = default;
  LinComb(const Key& k, const Scalar& c) { add(k, c); }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const LinComb& o, const Scalar& c = Scalar(1)) {
    if (c.is_zero()) return;
    if (c.is_one()) {
      for (auto& [k, v] : o.terms_) add(k, v);
    } else {
      for (auto& [k, v] : o.terms_) add(k, v * c);
    }
  }
  LinComb scaled(const Scalar& c) const {
    LinComb r;
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
  }
  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, Scalar(-1));
    return *this;
  }
  LinComb operator+(const LinComb& o) const {
    LinComb r = *this;
    r.add(o);
    return r;
  }
  LinComb operator-(const LinComb& o) const {
    LinComb r = *this;
    r.add(o, Scalar(-1));
    return r;
  }
  LinComb operator-() const { return scaled(Scalar(-1)); }
  friend LinComb operator*(const Scalar& c, const LinComb& e) { return e.scaled(c); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  Scalar coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
  bool operator!=(const LinComb& o) const { return !(*this == o); }

  LinComb specialize(const std::map<std::string, Rational>& b) const {
    LinComb r;
    for (auto& [k, v] : terms_) r.add(k, v.specialize(b));
    return r;
  }
  template <class F>
  LinComb map_coeffs(F f) const {
    LinComb r;
    for (auto& [k, v] : terms_) r.add(k, f(v));
    return r;
  }

 private:
  Map terms_;
};

using Expr = LinComb<Monomial>;

// Syntax tree of a field expression as written in presentation files.
struct RawExpr {
  enum class Kind { Sum, Vacuum, Name, Deriv, Normal, Exp };
  Kind kind = Kind::Sum;
  std::vector<std::pair<Scalar, RawExpr>> terms;  // Sum
  std::vector<RawExpr> children;                  // Deriv (1 child), Normal
  std::string name;                               // Name, Exp (lattice field)
  long number = 0;                                // derivative order, Exp sector
  std::size_t line = 0, column = 0;

  static RawExpr vacuum() {
    RawExpr r;
    r.kind = Kind::Vacuum;
    return r;
  }
  static RawExpr named(std::string n) {
    RawExpr r;
    r.kind = Kind::Name;
    r.name = std::move(n);
    return r;
  }

  RawExpr specialize(const std::map<std::string, Rational>& b) const;
  void collect_names(std::vector<std::string>& out) const;
};

// Evaluation of a syntax tree in any engine supplying the primitive operations.
template <class State>
struct RawEvaluator {
  std::function<State()> vacuum;
  std::function<State(const std::string&, const RawExpr&)> name;
  std::function<State(const State&, long)> deriv;
  std::function<State(const State&, const State&)> normal;
  std::function<State(long, const std::string&, const RawExpr&)> exp;

  State operator()(const RawExpr& r) const {
    switch (r.kind) {
      case RawExpr::Kind::Vacuum:
        return vacuum();
      case RawExpr::Kind::Name:
        return name(r.name, r);
      case RawExpr::Kind::Deriv:
        return deriv((*this)(r.children.at(0)), r.number);
      case RawExpr::Kind::Exp:
        return exp(r.number, r.name, r);
      case RawExpr::Kind::Normal: {
        State acc = (*this)(r.children.back());
        for (auto it = r.children.rbegin() + 1; it != r.children.rend(); ++it)
          acc = normal((*this)(*it), acc);
        return acc;
      }
      case RawExpr::Kind::Sum: {
        State acc;
        for (auto& [c, t] : r.terms) acc.add((*this)(t), c);
        return acc;
      }
    }
    return State();
  }
};

// Parses the expression grammar; `is_name` decides which multi-character
// tokens (e.g. "G+") are identifiers.
RawExpr parse_raw_expr(std::string_view text, const std::function<bool(const std::string&)>& is_name,
                       std::size_t line = 1, std::size_t column = 1);

// coefficient text as it appears in front of a term ("", "-", "2 ", "[k + 1] ")
std::string coeff_prefix(const Scalar& c, bool first);

}  // namespace voa
