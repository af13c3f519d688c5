#pragma once

#include "vxa/qseries.hpp"
#include "vxa/weyl.hpp"

namespace vxa {

// Two-variable truncated series: z-Laurent exponents with exact q-series
// components, all sharing one truncation order in q.
class JacobiSeries {
 public:
  explicit JacobiSeries(Rat trunc = 0) : trunc_(std::move(trunc)) {}

  const Rat& trunc() const { return trunc_; }
  const std::map<long, QSeries>& components() const { return comp_; }
  bool is_zero() const { return comp_.empty(); }

  void add(long z, const Rat& e, const Rat& c);
  QSeries component(long z) const {
    auto it = comp_.find(z);
    return it == comp_.end() ? QSeries(trunc_) : it->second;
  }

  friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b);
  friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b);
  friend JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b);
  friend JacobiSeries operator*(const Rat& s, const JacobiSeries& a);

  // Leading q-coefficient must be a single z-monomial with nonzero
  // coefficient (true for the theta denominators used here).
  JacobiSeries inverse() const;

  JacobiSeries mul_q(const QSeries& s) const;  // z-independent factor
  JacobiSeries div_q(const QSeries& s) const { return mul_q(s.inverse()); }
  JacobiSeries shifted(const Rat& s) const;  // multiply by q^s
  JacobiSeries truncated(const Rat& t) const;

  QSeries at_z1() const;
  CycloSeries at_root(long M, long t) const;  // z -> zeta_M^t

  // (q-exponent, z-exponent) of the minimal q-term; z resolved by smallest |z|.
  std::optional<std::pair<Rat, long>> min_term() const;

  static std::optional<std::pair<Rat, long>> first_mismatch(const JacobiSeries& a,
                                                            const JacobiSeries& b, const Rat& below);

 private:
  Rat trunc_;
  std::map<long, QSeries> comp_;
};

// eta = q^{1/24} prod_{i>=1} (1 - q^i), exact to order N.
QSeries eta_series(const Rat& N);

// Denominator function: prod_{i>=1}(1-q^i) prod_j (1-z q^{1/2+j})(1-z^{-1} q^{1/2+j}),
// the j-product starting at 1 (literal) or 0.
JacobiSeries jacobi_theta(const Rat& N, bool product_from_zero);

// theta_s: lattice sum q^{(1/2)(sqrt(6 ell) n + s/sqrt(6 ell))^2} with a
// selectable z-exponent convention: Paper (3 ell n + s) or Charge (the J_0
// eigenvalue (6 ell n + s)/3; requires 3 | s).
enum class ThetaZExp { Paper, Charge };
JacobiSeries lattice_theta(long ell, long s, const Rat& N, ThetaZExp mode = ThetaZExp::Charge);

Rat bp_central_charge(long ell);  // -2 l (6l - 7)/(2l + 3)

struct BpCalibration {
  bool theta_from_zero = true;  // chosen theta product start
  bool weyl_signs = true;       // det(u) signs in the Weyl numerator
  Rat q_shift = 0;              // q-power applied to reach the q^0 vacuum
  Rat leading_scale = 1;        // coefficient scale applied
};

// Character of W_ell by the affine Weyl sum over W x 2Q^dual of sl_3,
// normalized so the vacuum term is 1 * z^0 q^0 (exponents are conformal
// weights); `full` multiplies back q^{-c/24}.
JacobiSeries bp_character_normalized(long ell, const Rat& N, BpCalibration* calib = nullptr);
JacobiSeries bp_character(long ell, const Rat& N, BpCalibration* calib = nullptr);

// ch L_{3 Lambda_s} for W(sl_n) at p = 3: Weyl-sum over the affine Weyl group
// of sl_n divided by eta^{n-1}; exponents carry the full q^{h - c/24}
// normalization.
QSeries w_minimal_character(long n, long s, const Rat& N);

// Rocha-Caridi (p,q)-minimal-model character (independent oracle):
// eta^{-1} sum_k [q^{(2pqk + qr - ps)^2/(4pq)} - q^{(2pqk + qr + ps)^2/(4pq)}].
QSeries virasoro_minimal_character(long p, long q, long r, long s, const Rat& N);

struct DecompositionReport {
  long ell = 0;
  Rat order = 0;         // comparison bound actually used
  bool matched = false;  // ch W = sum_s ch L_s * theta_{3s}/eta below `order`
  std::optional<std::pair<Rat, long>> first_mismatch;
  bool inverse_ok = false;        // the 1/(2l) sum-over-roots inversion, all s
  bool orthogonality_ok = false;  // the delta_{s,s'} kernel in cyclotomic arithmetic
  BpCalibration calib;
  std::string detail;
};
DecompositionReport verify_decomposition(long ell, const Rat& N);

struct CorollaryReport {
  long ell = 0;
  long s = 0;
  Rat order = 0;
  bool matched = false;
  std::optional<Rat> first_mismatch;
  BpCalibration calib;
};
CorollaryReport verify_corollary(long ell, long s, const Rat& N);

}  // namespace vxa
