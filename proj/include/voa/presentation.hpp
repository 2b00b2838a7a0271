#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/expr.hpp"

namespace voa {

struct GeneratorSymbol {
  std::string name;
  bool odd = false;
  Rational weight;
  std::map<std::string, Rational> charges;
};

struct OpeEntry {
  std::string a, b;
  std::map<long, RawExpr> poles;  // n -> a_(n) b
  std::size_t line = 0;
};

// rank-one lattice factor F_q with ⟨φ,φ⟩ = q = ±1
struct LatticeFactor {
  std::string field;
  int signature = 1;
};

struct Presentation {
  std::string name;
  std::vector<std::string> params;
  std::vector<GeneratorSymbol> generators;  // declaration order
  std::vector<OpeEntry> ope;
  std::vector<std::pair<std::string, RawExpr>> fields;
  std::vector<RawExpr> ideal;
  std::string grading;  // named field of the grading Virasoro, may be empty
  std::optional<LatticeFactor> lattice;
  std::vector<std::pair<std::string, std::string>> notes;  // free-form metadata

  // number of (weak) generators, counting e^{±φ} of a lattice factor
  std::size_t generator_count() const { return generators.size() + (lattice ? 2 : 0); }
  const GeneratorSymbol* find(const std::string& n) const;
  bool is_field(const std::string& n) const;

  Presentation specialize(const std::map<std::string, Rational>& bindings) const;
};

Presentation parse_presentation(std::string_view text);

// Merges two presentations; cross products vanish. Throws on name clashes or
// when both carry a lattice factor.
Presentation tensor(const Presentation& a, const Presentation& b);

}  // namespace voa
