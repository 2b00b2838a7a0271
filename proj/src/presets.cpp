#include "voa/presets.hpp"

#include <algorithm>

namespace voa {

namespace {

const char* kVirasoro = R"(algebra virasoro
param c
generator L parity=even weight=2
grading L
ope L L { 3: [c/2] |0>; 1: 2 L; 0: d(L); }
)";

const char* kN2 = R"(algebra n2
param c
generator H parity=even weight=1 charge.H=0
generator T parity=even weight=2 charge.H=0
generator E parity=odd weight=1/2 charge.H=1
generator F parity=odd weight=5/2 charge.H=-1
# weights are T~ = T + dH weights
field Tt = T + d(H);
field Tperp = T - [3/(2*c)] :(H H);
field Wpf = :(E F) - d(T) - [6/c] :(T H) - [(c - 9)/(3*c)] d^2(H) + [6/c^2] :(H H H);
grading Tt
ope T T { 3: [c/2] |0>; 1: 2 T; 0: d(T); }
ope H H { 1: [c/3] |0>; }
ope T H { 1: H; 0: d(H); }
ope T E { 1: 3/2 E; 0: d(E); }
ope T F { 1: 3/2 F; 0: d(F); }
ope E F { 2: [2*c/3] |0>; 1: 2 H; 0: 2 T + d(H); }
ope F E { 2: [2*c/3] |0>; 1: -2 H; 0: 2 T - d(H); }
ope H E { 0: E; }
ope H F { 0: -F; }
)";

// @DL@ and @J3@ are the two coefficients that differ between the table variants
const char* kW = R"(algebra @NAME@
param k
generator J parity=even weight=1 charge.J=0
generator L parity=even weight=2 charge.J=0
generator G+ parity=even weight=1 charge.J=1
generator G- parity=even weight=3 charge.J=-1
generator W parity=even weight=3 charge.J=0
# weights are L~ = L + dJ weights
field Lt = L + d(J);
field Lperp = L - [2/(3*k + 8)] :(J J);
field Lambda = [1/(k + 2)^2] ( :(G+ G-) + [k + 2] ( -1/2 d(W) - [4/(3*k + 8)] :(W J)
  + [3*(k + 2)*(k + 4)*(6*k^2 + 33*k + 46)/(2*(3*k + 8)*(20*k^2 + 93*k + 102))] d^2(Lperp)
  - [(k + 4)^2*(11*k + 26)/(2*(3*k + 8)*(20*k^2 + 93*k + 102))] :(Lperp Lperp)
  + [2*(k + 4)/(3*k + 8)] d(:(Lperp J))
  + [8*(k + 4)/(3*k + 8)^2] :(Lperp J J)
  - [(2*k + 5)/(3*k + 8)] ( 8/3 :(d^2(J) J) + 2 :(d(J) d(J)) + [16/(3*k + 8)] :(d(J) J J)
      + [32/(3*(3*k + 8)^2)] :(J J J J) + [(3*k + 8)/6] d^3(J) ) ) );
grading Lt
ope J J { 1: [(3*k + 8)/4] |0>; }
ope J G+ { 0: G+; }
ope J G- { 0: -G-; }
ope L G+ { 1: 2 G+; 0: d(G+); }
ope L G- { 1: 2 G-; 0: d(G-); }
ope L J { 1: J; 0: d(J); }
ope L L { 3: [@LL@] |0>; 1: 2 L; 0: d(L); }
ope L W { 1: 3 W; 0: d(W); }
ope G+ G- {
  3: [(k + 2)*(2*k + 5)*(3*k + 8)] |0>;
  2: [4*(k + 2)*(2*k + 5)] J;
  1: [k + 2] ( 6 :(J J) + [2*(2*k + 5)] d(J) - [k + 4] L );
  0: [k + 2] ( W + [@J3@/(3*(3*k + 8)^2)] :(J J J) - [4*(k + 4)/(3*k + 8)] :(L J) + 6 :(d(J) J)
      @DL@ + [4*(3*k^2 + 17*k + 26)/(3*(3*k + 8))] d^2(J) );
}
ope W G+ {
  2: [2*(k + 4)*(3*k + 7)*(5*k + 16)/(3*k + 8)^2] G+;
  1: [3*(k + 4)*(5*k + 16)/(2*(3*k + 8))] d(G+) - [6*(k + 4)*(5*k + 16)/(3*k + 8)^2] :(J G+);
  0: - [8*(k + 4)*(k + 3)/((k + 2)*(3*k + 8))] :(J d(G+))
     - [4*(k + 4)*(3*k^2 + 15*k + 16)/((k + 2)*(3*k + 8)^2)] :(d(J) G+)
     + [(k + 4)*(k + 3)/(k + 2)] d^2(G+) - [2*(k + 4)^2/((k + 2)*(3*k + 8))] :(L G+)
     + [4*(k + 4)*(5*k + 16)/((k + 2)*(3*k + 8)^2)] :(J J G+);
}
ope W G- {
  2: - [2*(k + 4)*(3*k + 7)*(5*k + 16)/(3*k + 8)^2] G-;
  1: - [3*(k + 4)*(5*k + 16)/(2*(3*k + 8))] d(G-) - [6*(k + 4)*(5*k + 16)/(3*k + 8)^2] :(J G-);
  0: - [8*(k + 4)*(k + 3)/((k + 2)*(3*k + 8))] :(J d(G-))
     - [4*(k + 4)*(3*k^2 + 15*k + 16)/((k + 2)*(3*k + 8)^2)] :(d(J) G-)
     - [(k + 4)*(k + 3)/(k + 2)] d^2(G-) + [2*(k + 4)^2/((k + 2)*(3*k + 8))] :(L G-)
     - [4*(k + 4)*(5*k + 16)/((k + 2)*(3*k + 8)^2)] :(J J G-);
}
ope W W {
  5: [2*(k + 4)*(2*k + 5)*(3*k + 7)*(5*k + 16)/(3*k + 8)] |0>;
  3: - [3*(k + 4)^2*(5*k + 16)/(3*k + 8)] Lperp;
  2: - [3*(k + 4)^2*(5*k + 16)/(2*(3*k + 8))] d(Lperp);
  1: - [3*(k + 4)^2*(5*k + 16)*(12*k^2 + 59*k + 74)/(4*(3*k + 8)*(20*k^2 + 93*k + 102))] d^2(Lperp)
     + [8*(k + 4)^3*(5*k + 16)/((3*k + 8)*(20*k^2 + 93*k + 102))] :(Lperp Lperp) + [4*(k + 4)] Lambda;
  0: - [(k + 4)^2*(5*k + 16)*(12*k^2 + 59*k + 74)/(6*(3*k + 8)*(20*k^2 + 93*k + 102))] d^3(Lperp)
     + [8*(k + 4)^3*(5*k + 16)/((3*k + 8)*(20*k^2 + 93*k + 102))] :(d(Lperp) Lperp) + [2*(k + 4)] d(Lambda);
}
ideal { :(G+ G+); :(G- G-); }
note ideal the ideal statement is meaningful at k=-1
)";

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
    s.replace(p, from.size(), to);
}

std::string w_text(const std::string& name, bool alt_variant) {
  std::string s = kW;
  replace_all(s, "@NAME@", name);
  replace_all(s, "@LL@", "-(3*k + 8)*(8*k + 17)/(2*(k + 4))");
  if (alt_variant) {
    replace_all(s, "@J3@", "8*(k + 11)");
    replace_all(s, "@DL@", "+ [(k + 4)/2] d(L)");
  } else {
    replace_all(s, "@J3@", "8*(11*k + 32)");
    replace_all(s, "@DL@", "- [(k + 4)/2] d(L)");
  }
  return s;
}

std::string lattice_text(int q) {
  std::string name = q > 0 ? "F+1" : "F-1";
  std::string field = q > 0 ? "phip" : "phim";
  return "algebra " + name + "\nlattice " + field + " signature=" + std::to_string(q) + "\n";
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"virasoro", "heis", "n2", "wsl4sub", "wsl4sub-altB", "F+1", "F-1"};
}

bool is_preset(std::string_view name) {
  if (name.rfind("Heis(", 0) == 0 && name.back() == ')') return true;
  auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string preset_text(std::string_view name) {
  if (name == "virasoro") return kVirasoro;
  if (name == "n2") return kN2;
  if (name == "wsl4sub") return w_text("wsl4sub", false);
  if (name == "wsl4sub-altB") return w_text("wsl4sub-altB", true);
  if (name == "F+1") return lattice_text(1);
  if (name == "F-1") return lattice_text(-1);
  std::string level = "1";
  if (name.rfind("Heis(", 0) == 0 && name.back() == ')')
    level = std::string(name.substr(5, name.size() - 6));
  else if (name != "heis")
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  Scalar lv = Scalar::parse(level);
  std::string params;
  for (std::size_t i = 0; i < params::kMax; ++i)
    if (lv.var_mask() & (1u << i)) params += " " + params::name(i);
  return "algebra Heis(" + lv.str() + ")\n" + (params.empty() ? "" : "param" + params + "\n") +
         "generator alpha parity=even weight=1\nope alpha alpha { 1: [" + lv.str() + "] |0>; }\n";
}

Presentation load_preset(std::string_view name, const std::map<std::string, Rational>& bindings) {
  Presentation p = parse_presentation(preset_text(name));
  if (!bindings.empty()) p = p.specialize(bindings);
  return p;
}

Scalar central_charge_w(const Scalar& k) {
  return -(Scalar(3) * k + Scalar(8)) * (Scalar(8) * k + Scalar(17)) / (k + Scalar(4));
}

Expr parafermion_generator(const Algebra& n2, const Scalar& c, const Scalar& nu) {
  if (c.is_constant()) {
    for (Rational bad : {Rational(0), Rational(1), Rational(3, 2), Rational(-6), Rational(-9)})
      if (c.value() == bad)
        throw MathError("parafermion generator is not defined for excluded central charge c=" + bad.get_str());
  } else if (c.is_zero()) {
    throw MathError("central charge must be nonzero");
  }
  Expr E = n2.gen("E"), F = n2.gen("F"), T = n2.gen("T"), H = n2.gen("H");
  Expr w = n2.normal(E, F);
  w -= n2.deriv(T);
  w.add(n2.normal(T, H), -Scalar(6) / c);
  w.add(n2.deriv(H, 2), -(c - Scalar(9)) / (Scalar(3) * c));
  w.add(n2.normal(H, n2.normal(H, H)), Scalar(6) / (c * c));
  return w.scaled(nu);
}

}  // namespace voa
