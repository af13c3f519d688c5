#pragma once

#include <iosfwd>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "vxa/algebra.hpp"

namespace vxa {

// The rewriting engine: exact n-th products, Wick products and derivatives of
// fields in a freely generated vertex superalgebra, with canonical normal
// forms. All operations are pure given the (immutable) presentation; the memo
// cache supports concurrent readers with exclusive insertion, and results are
// independent of cache state.
//
// Reduction rules (the contract):
//   R1  (da) o_n b = -n (a o_{n-1} b);  a o_n (db) = d(a o_n b) + n (a o_{n-1} b)
//   R2  skew-symmetry (used for table checks, a theorem of the engine otherwise)
//   R3  a o_n (b o_{-1} c) = (-1)^{|a||b|} b o_{-1} (a o_n c)
//         + sum_j binom(n,j) (a o_j b) o_{n-1-j} c          (n >= 0, a a letter)
//   R4  (:ab:) o_n c = sum_j a o_{-1-j} (b o_{n+j} c)
//         + (-1)^{|a||b|} sum_j b o_{n-1-j} (a o_j c)
//   R5  a o_{-1-k} b = (1/k!) :(d^k a) b:;  generator pairs from the table.
class Engine {
 public:
  explicit Engine(const Algebra& alg) : alg_(alg) {}
  Engine(const Engine&) = delete;

  const Algebra& algebra() const { return alg_; }

  FieldExpr nth(const FieldExpr& a, const FieldExpr& b, long n) const;
  FieldExpr wick(const FieldExpr& a, const FieldExpr& b) const { return nth(a, b, -1); }
  FieldExpr derivative(const FieldExpr& a, long k = 1) const;

  FieldExpr gen_field(int g) const { return FieldExpr::term(Monomial::single(g, 0), RatFunc(1)); }
  FieldExpr gen_field(const std::string& name) const { return gen_field(alg_.gen_index(name)); }
  FieldExpr vacuum() const { return FieldExpr::vacuum(); }

  // Normal form of the right-nested Wick word of the given letters.
  FieldExpr normalize_word(const std::vector<Letter>& word) const;

  // Right-nested Wick product of a list of field expressions.
  FieldExpr wick_chain(const std::vector<FieldExpr>& factors) const;

  // b o_n a computed through the skew-symmetry transform of the products
  // a o_{n+j} b (R2); used by consistency checks and property tests.
  FieldExpr nth_via_skew(const FieldExpr& a, const FieldExpr& b, long n) const;

  // Verifies R2 on all generator pairs and the commutator identity on all
  // generator triples of the presentation. Returns a description of the first
  // failure, or an empty string.
  std::string check_consistency() const;

  // --- memo cache ---------------------------------------------------------
  std::size_t cache_size() const;
  void save_cache(std::ostream& os) const;
  // Ignores corrupt or version/fingerprint-mismatched payloads.
  void load_cache(std::istream& is);
  static std::string algebra_fingerprint(const Algebra& alg);

 private:
  FieldExpr mono_nth(const Monomial& a, const Monomial& b, long n) const;
  FieldExpr mono_nth_cached(const Monomial& a, const Monomial& b, long n) const;
  FieldExpr expr_nth(const FieldExpr& a, const Monomial& b, long n) const;
  FieldExpr nth_mono_expr(const Monomial& a, const FieldExpr& b, long n) const;
  FieldExpr letter_pair(Letter x, Letter y, long n) const;  // single letters, n >= 0
  FieldExpr insert_letter(Letter x, const Monomial& m) const;
  FieldExpr derivative_mono(const Monomial& m) const;

  const Algebra& alg_;
  mutable std::unordered_map<std::string, FieldExpr> cache_;
  mutable std::unordered_map<std::string, FieldExpr> der_cache_;
  mutable std::shared_mutex mu_;
};

}  // namespace vxa
