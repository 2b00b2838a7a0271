#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "voa/presentation.hpp"

namespace voa {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vertex superalgebra freely generated by the table generators of a
// presentation. Products are computed by structural rewriting and memoized.
class Algebra {
 public:
  explicit Algebra(Presentation p);
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const Presentation& presentation() const { return pres_; }
  std::size_t size() const { return gens_.size(); }
  const GeneratorSymbol& generator(unsigned rank) const { return gens_.at(rank); }
  std::optional<unsigned> rank_of(std::string_view name) const;
  unsigned rank(std::string_view name) const;  // throws if unknown

  // states
  Expr vacuum() const { return Expr(Monomial{}, Scalar(1)); }
  Expr gen(std::string_view name, unsigned deriv = 0) const;
  bool has_field(const std::string& name) const;
  const Expr& field(const std::string& name) const;
  Expr eval(const RawExpr& r) const;
  Expr parse(std::string_view text) const;

  // products; n may be negative (n = -1 is the normally ordered product)
  Expr nth(const Expr& a, const Expr& b, long n) const;
  Expr normal(const Expr& a, const Expr& b) const { return nth(a, b, -1); }
  Expr deriv(const Expr& a, unsigned times = 1) const;
  Expr divided_deriv(const Expr& a, unsigned times) const;  // ∂^(j) = ∂^j / j!
  const Expr& mono_nth(const Monomial& a, const Monomial& b, long n) const;
  // a_(n) b for generator ranks, n >= 0, straight from the (completed) table
  const Expr& table(unsigned a, unsigned b, long n) const;

  // grading data
  Rational weight(const Monomial& m) const;
  bool odd(const Monomial& m) const;
  Rational charge(const Monomial& m, const std::string& grading) const;
  std::vector<std::string> charge_names() const { return charge_names_; }
  // largest n >= 0 for which a_(n) b can be nonzero (-1 if none)
  long max_pole(const Monomial& a, const Monomial& b) const;
  long weight_units() const { return unit_; }  // weights are multiples of 1/unit
  long scaled_weight(const Monomial& m) const;  // weight * unit

  // printing
  std::string str(const Expr& e) const;
  std::string str(const Monomial& m) const;
  std::string print() const;  // canonical presentation text

  // skew/parity/weight consistency of stored table entries; empty when fine
  std::vector<std::string> validate() const;

 private:
  Presentation pres_;
  std::vector<GeneratorSymbol> gens_;  // sorted by (weight, name)
  std::vector<std::string> charge_names_;
  std::vector<long> wunits_;
  long unit_ = 1;

  struct Pair {
    const OpeEntry* raw = nullptr;
    bool reversed = false;  // raw is stored for (b, a)
    int state = 0;          // 0 pending, 1 evaluating, 2 done
    std::vector<Expr> poles;
  };
  mutable std::vector<Pair> pairs_;
  mutable std::recursive_mutex table_mutex_;
  void ensure_pair(unsigned a, unsigned b) const;

  mutable std::map<std::string, Expr> field_cache_;
  mutable std::map<std::string, int> field_state_;

  struct NthKey {
    Monomial a, b;
    long n;
    bool operator==(const NthKey& o) const { return n == o.n && a == o.a && b == o.b; }
  };
  struct NthHash {
    std::size_t operator()(const NthKey& k) const noexcept {
      MonomialHash h;
      return h(k.a) * 31 + h(k.b) * 1000003 + static_cast<std::size_t>(k.n + 1000);
    }
  };
  mutable std::unordered_map<NthKey, Expr, NthHash> nth_cache_;
  mutable std::unordered_map<NthKey, Expr, NthHash> no_cache_;  // a = single factor, n unused
  mutable std::unordered_map<Monomial, Expr, MonomialHash> deriv_cache_;
  mutable std::shared_mutex cache_mutex_;

  Expr compute_nth(const Monomial& a, const Monomial& b, long n) const;
  Expr gen_action(unsigned g, const Monomial& b, long n) const;
  const Expr& no_factor(Factor a, const Monomial& b) const;
  Expr compute_no_factor(Factor a, const Monomial& b) const;
  const Expr& deriv_mono(const Monomial& m) const;
  Expr no_factor_expr(Factor a, const Expr& e) const;
  Expr nth_left(const Expr& a, const Monomial& b, long n) const;
  Expr nth_right(const Monomial& a, const Expr& b, long n) const;
  bool odd_gen(unsigned g) const { return gens_[g].odd; }
};

}  // namespace voa
