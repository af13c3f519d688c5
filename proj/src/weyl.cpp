#include "vxa/weyl.hpp"

#include <optional>
#include <set>
#include <stdexcept>

namespace vxa {

RootSystemA::RootSystemA(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RootSystemA needs n >= 2");
  int r = n - 1;
  cartan_.assign(r, std::vector<Rat>(r, 0));
  for (int i = 0; i < r; ++i) {
    cartan_[i][i] = 2;
    if (i + 1 < r) {
      cartan_[i][i + 1] = -1;
      cartan_[i + 1][i] = -1;
    }
  }
  // BFS closure of the simple reflections acting on root coordinates
  auto key = [r](const std::vector<std::vector<Rat>>& m) {
    std::string s;
    for (auto& row : m)
      for (auto& x : row) s += rat_str(x) + ",";
    return s;
  };
  WeylElement id;
  id.mat.assign(r, std::vector<Rat>(r, 0));
  for (int i = 0; i < r; ++i) id.mat[i][i] = 1;
  id.det = 1;
  std::set<std::string> seen{key(id.mat)};
  weyl_.push_back(id);
  for (std::size_t head = 0; head < weyl_.size(); ++head) {
    WeylElement w = weyl_[head];
    for (int i = 0; i < r; ++i) {
      // s_i(v) = v - <(Av)_i> e_i composed with w
      WeylElement nw;
      nw.mat.assign(r, std::vector<Rat>(r, 0));
      for (int col = 0; col < r; ++col) {
        std::vector<Rat> v(r);
        for (int row = 0; row < r; ++row) v[row] = w.mat[row][col];
        Rat pairing = 0;
        for (int j = 0; j < r; ++j) pairing += cartan_[i][j] * v[j];
        v[i] -= pairing;
        for (int row = 0; row < r; ++row) nw.mat[row][col] = v[row];
      }
      nw.det = -w.det;
      std::string k = key(nw.mat);
      if (seen.insert(k).second) weyl_.push_back(nw);
    }
  }
}

Rat RootSystemA::form(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  Rat s = 0;
  int r = rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) s += a[i] * cartan_[i][j] * b[j];
  return s;
}

std::vector<Rat> RootSystemA::rho() const {
  int r = rank();
  std::vector<Rat> c(r);
  for (int i = 1; i <= r; ++i) c[i - 1] = Rat(i * (n_ - i)) / 2;
  return c;
}

std::vector<Rat> RootSystemA::fundamental(int s) const {
  int r = rank();
  std::vector<Rat> c(r, 0);
  if (s == 0) return c;
  if (s < 0 || s > r) throw std::invalid_argument("fundamental weight index out of range");
  for (int j = 1; j <= r; ++j)
    c[j - 1] = (j <= s) ? Rat(j * (n_ - s)) / n_ : Rat(s * (n_ - j)) / n_;
  return c;
}

std::vector<Rat> RootSystemA::apply(const WeylElement& w, const std::vector<Rat>& v) const {
  int r = rank();
  std::vector<Rat> out(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += w.mat[i][j] * v[j];
  return out;
}

AffineWeight translate(const RootSystemA& rs, const AffineWeight& lambda,
                       const std::vector<Rat>& beta) {
  AffineWeight out = lambda;
  Rat m = lambda.level;
  int r = rs.rank();
  for (int i = 0; i < r; ++i) out.finite[i] += m * beta[i];
  out.delta -= rs.form(lambda.finite, beta) + rs.form(beta, beta) * m / 2;
  return out;
}

AffineWeight shifted_action(const RootSystemA& rs, const RootSystemA::WeylElement& u,
                            const std::vector<Rat>& beta, const AffineWeight& lambda) {
  AffineWeight rhohat{Rat(rs.n()), rs.rho(), Rat(0)};
  AffineWeight x{lambda.level + rhohat.level, lambda.finite, lambda.delta};
  int r = rs.rank();
  for (int i = 0; i < r; ++i) x.finite[i] += rhohat.finite[i];
  AffineWeight t = translate(rs, x, beta);
  t.finite = rs.apply(u, t.finite);
  t.level -= rhohat.level;
  for (int i = 0; i < r; ++i) t.finite[i] -= rhohat.finite[i];
  return t;
}

// --- exact quadratic minimization over boxes ---------------------------------

namespace {

// Solve Qx = rhs exactly (small dense SPD system).
bool solve_small(std::vector<std::vector<Rat>> Q, std::vector<Rat> rhs, std::vector<Rat>& out) {
  const std::size_t d = rhs.size();
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    while (piv < d && Q[piv][k] == 0) ++piv;
    if (piv == d) return false;
    std::swap(Q[piv], Q[k]);
    std::swap(rhs[piv], rhs[k]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == k || Q[i][k] == 0) continue;
      Rat f = Q[i][k] / Q[k][k];
      for (std::size_t j = k; j < d; ++j) Q[i][j] -= f * Q[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  out.assign(d, 0);
  for (std::size_t i = 0; i < d; ++i) out[i] = rhs[i] / Q[i][i];
  return true;
}

Rat eval_quad(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b, const Rat& c,
              const std::vector<Rat>& x) {
  const std::size_t d = b.size();
  Rat s = c;
  for (std::size_t i = 0; i < d; ++i) {
    s += b[i] * x[i];
    for (std::size_t j = 0; j < d; ++j) s += x[i] * Q[i][j] * x[j];
  }
  return s;
}

// Restrict the quadratic to x_i = v.
void restrict_quad(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b, const Rat& c,
                   std::size_t i, const Rat& v, std::vector<std::vector<Rat>>& Qr,
                   std::vector<Rat>& br, Rat& cr) {
  const std::size_t d = b.size();
  Qr.clear();
  br.clear();
  cr = c + Q[i][i] * v * v + b[i] * v;
  for (std::size_t r = 0; r < d; ++r) {
    if (r == i) continue;
    std::vector<Rat> row;
    for (std::size_t s = 0; s < d; ++s) {
      if (s == i) continue;
      row.push_back(Q[r][s]);
    }
    Qr.push_back(std::move(row));
    br.push_back(b[r] + (Q[r][i] + Q[i][r]) * v);
  }
}

// Minimum of the convex quadratic over the closed box [-B, B]^d.
Rat quad_min_over_box(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b,
                      const Rat& c, long B) {
  const std::size_t d = b.size();
  if (d == 0) return c;
  std::optional<Rat> best;
  std::vector<Rat> crit;
  std::vector<Rat> rhs(d);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = -b[i] / 2;
  std::vector<std::vector<Rat>> Qs = Q;  // symmetrize
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Qs[i][j] = (Q[i][j] + Q[j][i]) / 2;
  if (solve_small(Qs, rhs, crit)) {
    bool inside = true;
    for (const auto& x : crit)
      if (x < -Rat(B) || x > Rat(B)) inside = false;
    if (inside) best = eval_quad(Q, b, c, crit);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      std::vector<std::vector<Rat>> Qr;
      std::vector<Rat> br;
      Rat cr;
      restrict_quad(Q, b, c, i, Rat(sgn * B), Qr, br, cr);
      Rat m = quad_min_over_box(Qr, br, cr, B);
      if (!best || m < *best) best = m;
    }
  return *best;
}

}  // namespace

Rat quadratic_min_outside_box(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b,
                              const Rat& c, long B) {
  // For a convex quadratic whose minimizer lies inside the box, the minimum
  // over the complement of the open box is attained on the boundary faces.
  const std::size_t d = b.size();
  std::optional<Rat> best;
  for (std::size_t i = 0; i < d; ++i)
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      std::vector<std::vector<Rat>> Qr;
      std::vector<Rat> br;
      Rat cr;
      restrict_quad(Q, b, c, i, Rat(sgn * B), Qr, br, cr);
      Rat m = quad_min_over_box(Qr, br, cr, B);
      if (!best || m < *best) best = m;
    }
  return *best;
}

bool quadratic_vertex_inside_box(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& b,
                                 long B) {
  const std::size_t d = b.size();
  std::vector<Rat> rhs(d), crit;
  for (std::size_t i = 0; i < d; ++i) rhs[i] = -b[i] / 2;
  std::vector<std::vector<Rat>> Qs = Q;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Qs[i][j] = (Q[i][j] + Q[j][i]) / 2;
  if (!solve_small(Qs, rhs, crit)) return false;
  for (const auto& x : crit)
    if (x <= -Rat(B) || x >= Rat(B)) return false;
  return true;
}

}  // namespace vxa
