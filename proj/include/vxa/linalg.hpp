#pragma once

#include <Eigen/Core>
#include <vector>

#include "vxa/ratfunc.hpp"

namespace vxa {

using RatMat = Eigen::Matrix<RatFunc, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<RatFunc, Eigen::Dynamic, 1>;
using PolyMat = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;
using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Outcome of an exact linear solve over Q(l). Exactly one of the following
// holds: `consistent` with a particular solution plus a nullspace basis
// (empty when the solution is unique), or an infeasibility witness y with
// y^T A = 0 and y^T b = 1.
struct LinearSolution {
  bool consistent = false;
  long rank = 0;
  std::vector<long> pivot_cols;
  RatVec particular;
  std::vector<RatVec> nullspace;
  RatVec infeasibility_witness;
  // Back substitution through the consistent pivot rows even when the system
  // is infeasible; used to form residuals.
  RatVec best_effort;
};

enum class SolveMethod {
  Auto,
  // Fraction-free (determinant-preserving) elimination on the polynomial
  // ring; pivot of smallest total degree, ties broken by column order.
  Bareiss,
  // Solve at several specialized values of l, reconstruct coordinates by
  // rational-function interpolation, then certify symbolically. Falls back
  // to Bareiss if certification fails.
  Interpolate,
};

LinearSolution solve_linear(const RatMat& A, const RatVec& b, SolveMethod method = SolveMethod::Auto);

// Rational-function reconstruction: given values f(t_i) at distinct points,
// returns p/q with p(t_i) = f(t_i) q(t_i) and deg p + deg q minimal-ish
// (balanced extended-Euclid cutoff). Result must be certified by the caller.
RatFunc reconstruct_ratfunc(const std::vector<Rat>& points, const std::vector<Rat>& values);

}  // namespace vxa
