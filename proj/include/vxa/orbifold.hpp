#pragma once

#include <array>
#include <map>

#include "vxa/catalog.hpp"
#include "vxa/linalg.hpp"
#include "vxa/weight_basis.hpp"

namespace vxa {

// A named generating set for normally ordered word expansions.
struct GeneratorSet {
  std::vector<std::string> names;
  std::vector<FieldExpr> fields;
  std::vector<Rat> weights;
  std::vector<Rat> charges;
  std::vector<long> degrees;  // filtration degree of each member

  static GeneratorSet make(const Engine& eng,
                           std::vector<std::pair<std::string, FieldExpr>> members);
  std::size_t size() const { return names.size(); }
};

// {J, T, U_{0,0..max_u_index}}.
GeneratorSet orbifold_generators(const Engine& eng, long max_u_index);

// A normally ordered word over a generator set: (member, derivative order)
// letters, members ascending, derivative orders non-increasing within one
// member. Denotes the right-nested Wick product.
struct GenWord {
  std::vector<std::pair<int, long>> letters;
  friend auto operator<=>(const GenWord&, const GenWord&) = default;
};

std::string genword_str(const GeneratorSet& gens, const GenWord& w);

// Words of the given weight/charge with total filtration degree at most
// max_filtration, ordered by (filtration degree, word order).
std::vector<GenWord> enumerate_words(const GeneratorSet& gens, const Rat& weight, const Rat& charge,
                                     long max_filtration);

// Normal form of a word (right-nested Wick product of derived members).
FieldExpr word_field(const Engine& eng, const GeneratorSet& gens, const GenWord& w);

struct ExpressResult {
  bool success = false;
  std::vector<std::pair<GenWord, RatFunc>> combo;  // nonzero coefficients only
  FieldExpr residual;                              // omega - achieved combination
  // On failure: exact certificate that omega is outside the span — a linear
  // functional on coefficient space vanishing on every word image with value
  // 1 on omega.
  std::map<Monomial, RatFunc> failure_functional;
};

ExpressResult express_in_generators(const Engine& eng, const FieldExpr& omega,
                                    const GeneratorSet& gens, long max_filtration,
                                    SolveMethod method = SolveMethod::Auto);

// --- the C_n invariant ------------------------------------------------------

struct CnTable {
  long n = 0;
  std::vector<RatFunc> coeff;  // C_{n,i}, i = 0..n+4
  RatFunc alternating_sum;     // C_n = sum_i (-1)^i C_{n,i}
};

// Coefficients of :(d^i G+)(d^{n+4-i} G-): in the normal form of omega.
// Requires charge 0, weight n+7, filtration degree <= 2.
CnTable cn_coefficients(const Engine& eng, const FieldExpr& omega, long n);

// The four reassociation/reordering defects in the telescoping decomposition
// of :U_{0,0}U_{1,n}: - :U_{0,n}U_{1,0}:, plus the middle difference whose
// C-table vanishes identically.
struct TelescopingTerms {
  std::array<FieldExpr, 4> diff;  // C^1..C^4 carriers
  FieldExpr zero_diff;
  std::array<CnTable, 4> tables;
};
TelescopingTerms telescoping_terms(const Engine& eng, long n);

// --- decoupling relations ----------------------------------------------------

struct DecouplingResult {
  long n = 0;
  bool no_decoupling = false;  // specialized level where the coefficient vanishes
  FieldExpr source;            // normal form of :U_{0,0}U_{1,n}: - :U_{0,n}U_{1,0}:
  std::string target;          // U_{0,n+4}
  RatFunc leading_coefficient;
  GeneratorSet gens;  // {J, T, U_{0,0..4}} — remainder vocabulary
  std::vector<std::pair<GenWord, RatFunc>> remainder;
  FieldExpr substitute;  // (source - remainder)/c : U_{0,n+4} as a field expr
  bool verified = false;
};

// Discovers decoupling relations, reducing remainders recursively (highest
// index first) so they only involve {J, T, U_{0,0..4}}.
class OrbifoldSolver {
 public:
  explicit OrbifoldSolver(const Engine& eng, SolveMethod method = SolveMethod::Auto)
      : eng_(eng), method_(method) {}
  const DecouplingResult& decoupling(long n);

 private:
  const Engine& eng_;
  SolveMethod method_;
  std::map<long, DecouplingResult> memo_;
};

DecouplingResult solve_decoupling(const Engine& eng, long n, SolveMethod method = SolveMethod::Auto);

// --- commutant corrections ----------------------------------------------------

struct CorrectionResult {
  long i = 0;
  FieldExpr omega;      // the correction term
  FieldExpr corrected;  // U^C_i = U_{0,i} + omega
  bool unique = false;  // nullspace of the combined system is zero
  // U^C_i written as a normally ordered polynomial in {J, T, U_{0,0..i}} —
  // the unique such expression below weight 8, and the coordinates whose
  // denominators the source catalog describes.
  GeneratorSet gens;
  std::vector<std::pair<GenWord, RatFunc>> word_combo;
  std::vector<Poly> denominator_factors;  // monic factors of the word coefficients
  bool factors_within_catalog = false;    // all factors divide l * prod(quadratics)
};

// Unique primary correction U^C_i = U_{0,i} + omega_i with J o_n U^C_i = 0
// (n >= 0), T^C-primary of weight i+3.
CorrectionResult solve_correction(const Engine& eng, long i, SolveMethod method = SolveMethod::Auto);

// The eight quadratic denominators (plus l itself) in the correction catalog.
const std::vector<Poly>& correction_denominator_catalog();

// True iff h o_n v = 0 for all 0 <= n < weight bound.
bool commutant_check(const Engine& eng, const FieldExpr& v, const FieldExpr& h);

}  // namespace vxa
