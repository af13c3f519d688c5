#pragma once

#include <vector>

#include "vxa/rational.hpp"

namespace vxa {

// Root-space combinatorics for sl_n. Finite weights are stored in simple-root
// coordinates; the normalized invariant form has (alpha_i | alpha_i) = 2.
class RootSystemA {
 public:
  explicit RootSystemA(int n);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }

  Rat form(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
  std::vector<Rat> rho() const;                 // sum of fundamental weights
  std::vector<Rat> fundamental(int s) const;    // omega_s, s = 0 -> zero

  struct WeylElement {
    std::vector<std::vector<Rat>> mat;  // action on root coordinates
    int det = 1;
  };
  const std::vector<WeylElement>& weyl_elements() const { return weyl_; }
  std::vector<Rat> apply(const WeylElement& w, const std::vector<Rat>& v) const;

 private:
  int n_;
  std::vector<std::vector<Rat>> cartan_;
  std::vector<WeylElement> weyl_;
};

// Affine weight: level, finite part in simple-root coordinates, delta
// coefficient.
struct AffineWeight {
  Rat level;
  std::vector<Rat> finite;
  Rat delta;
};

// t_beta(lambda) = lambda + m beta - ((lambda|beta) + |beta|^2 m / 2) delta,
// with m = level(lambda).
AffineWeight translate(const RootSystemA& rs, const AffineWeight& lambda,
                       const std::vector<Rat>& beta);

// Shifted action w o lambda = w(lambda + rhohat) - rhohat for w = u t_beta,
// where rhohat = rho + hdual Lambda_0 (hdual = n for sl_n).
AffineWeight shifted_action(const RootSystemA& rs, const RootSystemA::WeylElement& u,
                            const std::vector<Rat>& beta, const AffineWeight& lambda);

// Exact minimum of a positive-definite quadratic q(x) = x^T Q x + b^T x + c
// over the integer points outside the open box |x_i| < B (used to certify
// Weyl-sum truncations). Requires the continuous minimizer to lie inside the
// box; returns the minimum of q over the box boundary's continuous relaxation,
// a lower bound for all integer points outside.
Rat quadratic_min_outside_box(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b,
                              const Rat& c, long B);

// True if the continuous critical point of the quadratic lies strictly inside
// the box |x_i| < B.
bool quadratic_vertex_inside_box(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b,
                                 long B);

}  // namespace vxa
