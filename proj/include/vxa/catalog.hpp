#pragma once

#include <optional>

#include "vxa/engine.hpp"

namespace vxa {

// Built-in presentations. The returned algebras are parsed from the canonical
// algebra file texts below (the same bytes ship as data/bp.alg, data/bc.alg).
Algebra bp_algebra();
Algebra bc_system();
const std::string& bp_alg_text();
const std::string& bc_alg_text();

// Tensor product: disjoint union of generators, cross-OPEs zero.
// Throws std::invalid_argument on generator-name clash.
Algebra tensor(const Algebra& a, const Algebra& b, const std::string& name);

namespace detail {
// Programmatic constructions used by tests as an independent cross-check of
// the shipped texts; the flipped table orientations are produced by the
// skew-symmetry transform.
Algebra build_bp();
Algebra build_bc();
}  // namespace detail

// --- named composite fields -------------------------------------------------

// U_{i,j} = :(d^i G+)(d^j G-):, weight i+j+3, charge 0.
FieldExpr capital_u(const Algebra& alg, long i, long j);

FieldExpr heisenberg_virasoro(const Engine& eng);  // T^H = 3/(4l) :JJ:
FieldExpr coset_virasoro(const Engine& eng);       // T^C = T - T^H

// Right-nested Wick power of a generator.
FieldExpr power_field(const Engine& eng, const std::string& gen, long m);

FieldExpr je_field(const Engine& eng);     // J^E = -:bc:
FieldExpr te_field(const Engine& eng);     // T^E = -:b dc: + :(db)c:
FieldExpr jdiag_field(const Engine& eng);  // J + J^E
FieldExpr phi_plus(const Engine& eng, long n = 0);   // phi^+_{0,n} = :b d^n G+:
FieldExpr phi_minus(const Engine& eng, long n = 0);  // phi^-_{0,n} = :c d^n G-:
FieldExpr jd_field(const Engine& eng);     // J^D = J - (2l/3) J^E
FieldExpr td_field(const Engine& eng);     // T^D = T + T^E - 3/(2(3+2l)) :Jdiag Jdiag:

// Lookup by name for the CLI: T^H, T^C, J^E, T^E, J^diag, J^D, T^D, phi^+,
// phi^-, U_{i,j}. Returns nullopt for unknown names.
std::optional<FieldExpr> named_field(const Engine& eng, const std::string& name);

}  // namespace vxa
