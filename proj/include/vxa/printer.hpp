#pragma once

#include <string>

#include "vxa/algebra.hpp"

namespace vxa {

// Canonical text forms. The printers and the parser round-trip:
// parse(print(e)) == e, and printing is stable under re-parsing.
std::string mono_str(const Algebra& alg, const Monomial& m);
std::string fieldexpr_str(const Algebra& alg, const FieldExpr& e);
std::string algebra_to_string(const Algebra& alg);

}  // namespace vxa
