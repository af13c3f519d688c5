#include "vxa/linalg.hpp"

#include <algorithm>

namespace vxa {

namespace {

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  return (a * b).divexact(poly_gcd(a, b));
}

// Echelon form data produced by fraction-free elimination.
struct Echelon {
  PolyMat M;  // eliminated augmented matrix
  std::vector<long> pivot_cols;
  long rank_A = 0;
  bool rhs_consistent = true;
};

// Fraction-free Gaussian elimination (Bareiss) on [A | b] cleared to
// polynomial entries. Pivot choice: smallest degree among eligible entries,
// ties broken by column order, then row order.
Echelon bareiss_echelon(const RatMat& A, const RatVec& b) {
  const long rows = A.rows(), cols = A.cols();
  PolyMat M(rows, cols + 1);
  for (long i = 0; i < rows; ++i) {
    Poly l(1);
    for (long j = 0; j < cols; ++j) l = poly_lcm(l, A(i, j).den());
    l = poly_lcm(l, b(i).den());
    for (long j = 0; j < cols; ++j) M(i, j) = A(i, j).num() * l.divexact(A(i, j).den());
    M(i, cols) = b(i).num() * l.divexact(b(i).den());
  }

  Echelon e;
  std::vector<char> col_used(cols, 0);
  Poly prev(1);
  long k = 0;
  while (k < rows) {
    long pi = -1, pj = -1;
    long best_deg = -1;
    for (long j = 0; j < cols; ++j) {
      if (col_used[j]) continue;
      for (long i = k; i < rows; ++i) {
        if (M(i, j).is_zero()) continue;
        long d = M(i, j).degree();
        if (pi < 0 || d < best_deg) {
          best_deg = d;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    if (pi != k)
      for (long j = 0; j <= cols; ++j) std::swap(M(k, j), M(pi, j));
    col_used[pj] = 1;
    e.pivot_cols.push_back(pj);
    const Poly piv = M(k, pj);
    for (long i = k + 1; i < rows; ++i) {
      const Poly f = M(i, pj);
      for (long j = 0; j <= cols; ++j) {
        if (j == pj) {
          M(i, j) = Poly();
          continue;
        }
        M(i, j) = (M(i, j) * piv - f * M(k, j)).divexact(prev);
      }
    }
    prev = piv;
    ++k;
  }
  e.rank_A = k;
  for (long i = k; i < rows; ++i)
    if (!M(i, cols).is_zero()) e.rhs_consistent = false;
  e.M = std::move(M);
  return e;
}

// Back substitution on the echelon form over Q(l). free_choice assigns values
// to non-pivot columns.
RatVec back_substitute(const Echelon& e, long cols, const std::vector<RatFunc>& free_choice,
                       const std::vector<long>& free_cols, bool homogeneous) {
  RatVec x(cols);
  for (long j = 0; j < cols; ++j) x(j) = RatFunc(0);
  for (std::size_t f = 0; f < free_cols.size(); ++f) x(free_cols[f]) = free_choice[f];
  for (long k = e.rank_A - 1; k >= 0; --k) {
    long pj = e.pivot_cols[k];
    RatFunc acc = homogeneous ? RatFunc(0) : RatFunc(e.M(k, cols));
    for (long j = 0; j < cols; ++j) {
      if (j == pj) continue;
      if (!e.M(k, j).is_zero() && !x(j).is_zero()) acc -= RatFunc(e.M(k, j)) * x(j);
    }
    x(pj) = acc / RatFunc(e.M(k, pj));
  }
  return x;
}

LinearSolution finish_from_echelon(const Echelon& e, const RatMat& A, const RatVec& b,
                                   bool want_witness);

LinearSolution bareiss_solve(const RatMat& A, const RatVec& b, bool want_witness = true) {
  Echelon e = bareiss_echelon(A, b);
  return finish_from_echelon(e, A, b, want_witness);
}

LinearSolution infeasibility(const RatMat& A, const RatVec& b, long rank) {
  // Witness y with y^T A = 0, y^T b = 1: a solve on the transposed system.
  const long rows = A.rows(), cols = A.cols();
  RatMat At(cols + 1, rows);
  RatVec rhs(cols + 1);
  for (long j = 0; j < cols; ++j) {
    for (long i = 0; i < rows; ++i) At(j, i) = A(i, j);
    rhs(j) = RatFunc(0);
  }
  for (long i = 0; i < rows; ++i) At(cols, i) = b(i);
  rhs(cols) = RatFunc(1);
  LinearSolution w = bareiss_solve(At, rhs, /*want_witness=*/false);
  LinearSolution out;
  out.consistent = false;
  out.rank = rank;
  if (w.consistent) out.infeasibility_witness = w.particular;
  return out;
}

LinearSolution finish_from_echelon(const Echelon& e, const RatMat& A, const RatVec& b,
                                   bool want_witness) {
  const long cols = A.cols();
  std::vector<char> is_pivot(cols, 0);
  for (long p : e.pivot_cols) is_pivot[p] = 1;
  std::vector<long> free_cols;
  for (long j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  std::vector<RatFunc> zeros(free_cols.size(), RatFunc(0));
  if (!e.rhs_consistent) {
    LinearSolution out;
    if (want_witness) {
      out = infeasibility(A, b, e.rank_A);
    } else {
      out.consistent = false;
      out.rank = e.rank_A;
    }
    out.best_effort = back_substitute(e, cols, zeros, free_cols, false);
    return out;
  }
  LinearSolution out;
  out.consistent = true;
  out.rank = e.rank_A;
  out.pivot_cols = e.pivot_cols;
  out.particular = back_substitute(e, cols, zeros, free_cols, false);
  out.best_effort = out.particular;
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    auto choice = zeros;
    choice[f] = RatFunc(1);
    out.nullspace.push_back(back_substitute(e, cols, choice, free_cols, true));
  }
  return out;
}

// --- interpolation path ----------------------------------------------------

struct PointSolve {
  bool ok = false;          // point usable (pivots nonzero)
  bool consistent = false;  // system consistent at this point
  long rank = 0;
  std::vector<long> pivot_cols;
  QVec particular;
  std::vector<QVec> nullspace;
};

// Plain exact Gaussian elimination over Q at l = t. When forced_pivots is
// nonempty, that pivot-column sequence is imposed; a vanishing forced pivot
// marks the point unusable.
PointSolve solve_at_point(const RatMat& A, const RatVec& b, const Rat& t,
                          const std::vector<long>& forced_pivots) {
  const long rows = A.rows(), cols = A.cols();
  QMat M(rows, cols + 1);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      auto v = A(i, j).try_specialize(t);
      if (!v) return {};
      M(i, j) = *v;
    }
    auto v = b(i).try_specialize(t);
    if (!v) return {};
    M(i, cols) = *v;
  }
  PointSolve r;
  std::vector<char> col_used(cols, 0);
  long k = 0;
  auto eliminate = [&](long pj) -> bool {
    long pi = -1;
    for (long i = k; i < rows; ++i)
      if (M(i, pj) != 0) {
        pi = i;
        break;
      }
    if (pi < 0) return false;
    if (pi != k)
      for (long j = 0; j <= cols; ++j) std::swap(M(k, j), M(pi, j));
    for (long i = k + 1; i < rows; ++i) {
      if (M(i, pj) == 0) continue;
      Rat f = M(i, pj) / M(k, pj);
      for (long j = 0; j <= cols; ++j) M(i, j) -= f * M(k, j);
      M(i, pj) = 0;
    }
    col_used[pj] = 1;
    r.pivot_cols.push_back(pj);
    ++k;
    return true;
  };
  if (!forced_pivots.empty()) {
    for (long pj : forced_pivots)
      if (!eliminate(pj)) return {};  // bad point
  } else {
    for (long j = 0; j < cols && k < rows; ++j) eliminate(j);
  }
  r.rank = k;
  r.consistent = true;
  for (long i = k; i < rows; ++i)
    if (M(i, cols) != 0) r.consistent = false;
  r.ok = true;
  if (!r.consistent) return r;

  std::vector<long> free_cols;
  for (long j = 0; j < cols; ++j)
    if (!col_used[j]) free_cols.push_back(j);
  auto back = [&](const std::vector<Rat>& free_vals, bool homogeneous) {
    QVec x(cols);
    for (long j = 0; j < cols; ++j) x(j) = 0;
    for (std::size_t f = 0; f < free_cols.size(); ++f) x(free_cols[f]) = free_vals[f];
    for (long s = k - 1; s >= 0; --s) {
      long pj = r.pivot_cols[s];
      Rat acc = homogeneous ? Rat(0) : M(s, cols);
      for (long j = 0; j < cols; ++j)
        if (j != pj && M(s, j) != 0 && x(j) != 0) acc -= M(s, j) * x(j);
      x(pj) = acc / M(s, pj);
    }
    return x;
  };
  std::vector<Rat> zeros(free_cols.size(), Rat(0));
  r.particular = back(zeros, false);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    auto choice = zeros;
    choice[f] = 1;
    r.nullspace.push_back(back(choice, true));
  }
  return r;
}

bool verify_solution(const RatMat& A, const RatVec& b, const LinearSolution& s) {
  const long rows = A.rows(), cols = A.cols();
  for (long i = 0; i < rows; ++i) {
    RatFunc acc(0);
    for (long j = 0; j < cols; ++j)
      if (!A(i, j).is_zero() && !s.particular(j).is_zero()) acc += A(i, j) * s.particular(j);
    if (acc != b(i)) return false;
  }
  for (const auto& v : s.nullspace) {
    for (long i = 0; i < rows; ++i) {
      RatFunc acc(0);
      for (long j = 0; j < cols; ++j)
        if (!A(i, j).is_zero() && !v(j).is_zero()) acc += A(i, j) * v(j);
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

LinearSolution interpolate_solve(const RatMat& A, const RatVec& b) {
  const long cols = A.cols();
  long max_deg = 0;
  for (long i = 0; i < A.rows(); ++i) {
    for (long j = 0; j < cols; ++j) max_deg = std::max(max_deg, A(i, j).total_degree());
    max_deg = std::max(max_deg, b(i).total_degree());
  }

  // Reference point: the usable point of maximal rank among a few candidates.
  PointSolve ref;
  Rat ref_t;
  {
    Rat t = 2;
    int seen = 0;
    while (seen < 5) {
      PointSolve p = solve_at_point(A, b, t, {});
      if (p.ok) {
        ++seen;
        if (p.rank > ref.rank || !ref.ok) {
          ref = p;
          ref_t = t;
        }
      }
      t += 1;
    }
  }
  if (!ref.ok) return bareiss_solve(A, b);
  if (!ref.consistent) {
    // Certify generically: the witness system is solved symbolically below.
    LinearSolution w = infeasibility(A, b, ref.rank);
    if (!w.consistent && w.infeasibility_witness.size() > 0) return w;
    return bareiss_solve(A, b);
  }

  for (long budget = 2 * max_deg + 6; budget <= 64 * (max_deg + 1) + 6; budget *= 2) {
    std::vector<Rat> pts;
    std::vector<PointSolve> sols;
    Rat t = ref_t;
    while (static_cast<long>(pts.size()) < budget) {
      PointSolve p = solve_at_point(A, b, t, ref.pivot_cols);
      t += 1;
      if (!p.ok || !p.consistent) continue;
      pts.push_back(t - 1);
      sols.push_back(std::move(p));
    }
    LinearSolution out;
    out.consistent = true;
    out.rank = ref.rank;
    out.pivot_cols = ref.pivot_cols;
    out.particular = RatVec(cols);
    std::vector<Rat> vals(pts.size());
    for (long j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = sols[i].particular(j);
      out.particular(j) = reconstruct_ratfunc(pts, vals);
    }
    for (std::size_t v = 0; v < ref.nullspace.size(); ++v) {
      RatVec nv(cols);
      for (long j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = sols[i].nullspace[v](j);
        nv(j) = reconstruct_ratfunc(pts, vals);
      }
      out.nullspace.push_back(std::move(nv));
    }
    if (verify_solution(A, b, out)) return out;
  }
  return bareiss_solve(A, b);
}

}  // namespace

RatFunc reconstruct_ratfunc(const std::vector<Rat>& points, const std::vector<Rat>& values) {
  const std::size_t K = points.size();
  // Newton interpolation of F with F(t_i) = values_i.
  std::vector<Rat> dd = values;  // divided differences, built in place
  for (std::size_t level = 1; level < K; ++level)
    for (std::size_t i = K - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - level]);
  Poly F(dd.empty() ? Rat(0) : dd[K - 1]);
  for (std::size_t i = K - 1; i-- > 0;)
    F = F * (Poly::variable() - Poly(points[i])) + Poly(dd[i]);
  Poly M(1);
  for (const auto& t : points) M *= Poly::variable() - Poly(t);

  // Balanced extended Euclid on (M, F): stop when deg r drops below K/2.
  long cutoff = static_cast<long>(K) / 2;
  Poly r0 = M, r1 = F, t0, t1(1);
  while (!r1.is_zero() && r1.degree() >= cutoff) {
    auto [q, r2] = r0.divmod(r1);
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.is_zero()) return RatFunc(0);
  return RatFunc(r1, t1);
}

LinearSolution solve_linear(const RatMat& A, const RatVec& b, SolveMethod method) {
  if (A.cols() == 0) {
    LinearSolution out;
    bool zero = true;
    for (long i = 0; i < b.size(); ++i)
      if (!b(i).is_zero()) zero = false;
    out.consistent = zero;
    out.particular = RatVec(0);
    if (!zero) return infeasibility(A, b, 0);
    return out;
  }
  switch (method) {
    case SolveMethod::Bareiss:
      return bareiss_solve(A, b);
    case SolveMethod::Interpolate:
      return interpolate_solve(A, b);
    case SolveMethod::Auto:
    default: {
      long max_deg = 0;
      for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j) max_deg = std::max(max_deg, A(i, j).total_degree());
      bool small = A.rows() * A.cols() <= 1024;
      if (max_deg == 0 || small) return bareiss_solve(A, b);
      return interpolate_solve(A, b);
    }
  }
}

}  // namespace vxa
