#pragma once

#include "vxa/engine.hpp"

namespace vxa {

// Sparse polynomial in a fixed number of mode symbols, with coefficients in
// Q(l). Exponent vectors all have length nsyms.
class SymPoly {
 public:
  explicit SymPoly(int nsyms = 0) : n_(nsyms) {}
  static SymPoly constant(int nsyms, RatFunc c) {
    SymPoly p(nsyms);
    p.add(std::vector<int>(nsyms, 0), std::move(c));
    return p;
  }
  static SymPoly symbol(int nsyms, int k) {
    SymPoly p(nsyms);
    std::vector<int> e(nsyms, 0);
    e[k] = 1;
    p.add(std::move(e), RatFunc(1));
    return p;
  }

  int nsyms() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<std::vector<int>, RatFunc>& terms() const { return t_; }

  void add(std::vector<int> e, RatFunc c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend SymPoly operator+(const SymPoly& a, const SymPoly& b) {
    SymPoly r = a;
    for (const auto& [e, c] : b.t_) r.add(e, c);
    return r;
  }
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b) {
    SymPoly r = a;
    for (const auto& [e, c] : b.t_) r.add(e, -c);
    return r;
  }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r(a.n_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        std::vector<int> e(a.n_);
        for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add(std::move(e), ca * cb);
      }
    return r;
  }
  friend SymPoly operator*(const RatFunc& s, const SymPoly& a) {
    SymPoly r(a.n_);
    for (const auto& [e, c] : a.t_) r.add(e, c * s);
    return r;
  }
  SymPoly& operator+=(const SymPoly& o) { return *this = *this + o; }
  friend bool operator==(const SymPoly&, const SymPoly&) = default;

  // Replace symbol k by an arbitrary polynomial value.
  SymPoly substitute(int k, const SymPoly& value) const {
    SymPoly r(n_);
    for (const auto& [e, c] : t_) {
      SymPoly term = SymPoly::constant(n_, c);
      for (int i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        SymPoly base = (i == k) ? value : SymPoly::symbol(n_, i);
        for (int rep = 0; rep < e[i]; ++rep) term = term * base;
      }
      r += term;
    }
    return r;
  }

  std::string str(const std::vector<std::string>& names) const;

 private:
  int n_;
  std::map<std::vector<int>, RatFunc> t_;
};

// falling-factorial binomial with a polynomial upper argument:
// binom(x, j) = x(x-1)...(x-j+1)/j!
SymPoly sym_binom(const SymPoly& x, long j);

// [a_m, b_n] in the convention a(z) = sum a_n z^{-n-Delta_a}: a formal sum of
// fields placed at mode m+n with polynomial-in-m coefficients, plus a central
// term (an explicit polynomial in m) times delta_{m+n,0}. `offset_a` shifts
// the mode lattice of a (1/2 selects the integer-moded convention for the
// weight-3/2 fields); coefficients are then polynomials in the shifted index.
struct ModeBracket {
  std::map<Monomial, SymPoly> fields;
  SymPoly central;
};

ModeBracket mode_bracket(const Engine& eng, const FieldExpr& a, const FieldExpr& b,
                         const Rat& offset_a = Rat(0));

std::string mode_bracket_str(const Engine& eng, const ModeBracket& br);

// Super-Jacobi identity [a_m,[b_n,c_p]] = [[a_m,b_n],c_p] +- [b_n,[a_m,c_p]]
// checked exactly as polynomial identities in (m, n, p); the central parts are
// compared on the support of delta_{m+n+p,0}. Returns an empty string on
// success, a description of the first failure otherwise.
std::string jacobi_check(const Engine& eng, const FieldExpr& a, const FieldExpr& b,
                         const FieldExpr& c);

}  // namespace vxa
