#pragma once

#include <memory>
#include <string>
#include <vector>

#include "voa/algebra.hpp"

namespace voa {

std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
// canonical-source text of a preset; Heis(<level>) accepts any scalar level
std::string preset_text(std::string_view name);
Presentation load_preset(std::string_view name, const std::map<std::string, Rational>& bindings = {});

// default W-algebra variant (the one consistent with the Jacobi identities)
inline constexpr const char* kDefaultW = "wsl4sub";

// c_k = -(3k+8)(8k+17)/(k+4)
Scalar central_charge_w(const Scalar& k);

// ν(:EF: - ∂T - (6/c):TH: - ((c-9)/3c)∂²H + (6/c²):H³:) in an N=2 algebra of
// central charge c
Expr parafermion_generator(const Algebra& n2, const Scalar& c, const Scalar& nu);

}  // namespace voa
