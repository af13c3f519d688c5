#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vxa/ratfunc.hpp"

namespace vxa {

// One factor of a normal monomial: the der-th derivative of a generator.
struct Letter {
  std::uint16_t gen = 0;
  std::uint16_t der = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A normally ordered word in derivatives of generators, denoting the
// right-nested iterated Wick product of its letters. Letters are sorted by
// the algebra-wide generator order; within one generator, derivative orders
// are non-increasing (strictly decreasing for odd generators). The empty
// monomial is the vacuum.
struct Monomial {
  std::vector<Letter> letters;

  Monomial() = default;
  explicit Monomial(std::vector<Letter> ls) : letters(std::move(ls)) {}
  static Monomial vacuum() { return Monomial(); }
  static Monomial single(std::uint16_t g, std::uint16_t d) { return Monomial({Letter{g, d}}); }

  bool is_vacuum() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct GeneratorInfo {
  std::string name;
  Rat weight;
  bool odd = false;
  Rat charge = 0;
  bool filtered = false;  // counts toward the weak filtration degree
};

// A finite linear combination of normal monomials over Q(l). Canonical: no
// zero coefficients stored; equality is equality of term maps.
class FieldExpr {
 public:
  using Terms = std::map<Monomial, RatFunc>;

  FieldExpr() = default;
  static FieldExpr zero() { return FieldExpr(); }
  static FieldExpr term(Monomial m, RatFunc c) {
    FieldExpr e;
    e.add(std::move(m), std::move(c));
    return e;
  }
  static FieldExpr vacuum(RatFunc c = RatFunc(1)) { return term(Monomial::vacuum(), std::move(c)); }

  bool is_zero() const { return t_.empty(); }
  const Terms& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }

  void add(Monomial m, RatFunc c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  void add_scaled(const FieldExpr& o, const RatFunc& s) {
    if (s.is_zero()) return;
    for (const auto& [m, c] : o.t_) add(m, c * s);
  }

  RatFunc coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? RatFunc(0) : it->second;
  }

  FieldExpr operator-() const {
    FieldExpr r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
    FieldExpr r = a;
    r.add_scaled(b, RatFunc(1));
    return r;
  }
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
    FieldExpr r = a;
    r.add_scaled(b, RatFunc(-1));
    return r;
  }
  friend FieldExpr operator*(const RatFunc& s, const FieldExpr& a) {
    FieldExpr r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.t_) r.t_.emplace(m, c * s);
    return r;
  }
  FieldExpr& operator+=(const FieldExpr& o) {
    add_scaled(o, RatFunc(1));
    return *this;
  }
  FieldExpr& operator-=(const FieldExpr& o) {
    add_scaled(o, RatFunc(-1));
    return *this;
  }
  friend bool operator==(const FieldExpr&, const FieldExpr&) = default;

  // True iff the expression is a multiple of the vacuum.
  bool is_scalar() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_vacuum());
  }
  RatFunc scalar_value() const {
    if (t_.empty()) return RatFunc(0);
    if (!is_scalar()) throw std::domain_error("field expression is not a vacuum multiple");
    return t_.begin()->second;
  }

 private:
  Terms t_;
};

// Generator list plus the table of singular OPE products. Immutable after
// construction; shared freely across threads.
class Algebra {
 public:
  std::string name;
  std::vector<GeneratorInfo> gens;
  // (a, b, n) -> a o_n b for n >= 0; missing entries are zero.
  std::map<std::tuple<int, int, long>, FieldExpr> table;

  int gen_index(const std::string& gname) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == gname) return static_cast<int>(i);
    throw std::invalid_argument("unknown generator: " + gname);
  }
  std::optional<int> find_gen(const std::string& gname) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == gname) return static_cast<int>(i);
    return std::nullopt;
  }

  const FieldExpr* table_entry(int a, int b, long n) const {
    auto it = table.find({a, b, n});
    return it == table.end() ? nullptr : &it->second;
  }

  Rat weight(const Monomial& m) const {
    Rat w = 0;
    for (const auto& L : m.letters) w += gens[L.gen].weight + L.der;
    return w;
  }
  Rat charge(const Monomial& m) const {
    Rat q = 0;
    for (const auto& L : m.letters) q += gens[L.gen].charge;
    return q;
  }
  long filtration_degree(const Monomial& m) const {
    long d = 0;
    for (const auto& L : m.letters) d += gens[L.gen].filtered ? 1 : 0;
    return d;
  }
  bool odd(const Monomial& m) const {
    bool o = false;
    for (const auto& L : m.letters) o ^= gens[L.gen].odd;
    return o;
  }

  // Homogeneity helpers: value if every monomial agrees, nullopt otherwise
  // (zero counts as homogeneous of any weight/charge).
  std::optional<Rat> homogeneous_weight(const FieldExpr& e) const {
    std::optional<Rat> w;
    for (const auto& [m, c] : e.terms()) {
      Rat wm = weight(m);
      if (!w)
        w = wm;
      else if (*w != wm)
        return std::nullopt;
    }
    return e.is_zero() ? std::optional<Rat>(Rat(0)) : w;
  }
  std::optional<Rat> homogeneous_charge(const FieldExpr& e) const {
    std::optional<Rat> q;
    for (const auto& [m, c] : e.terms()) {
      Rat qm = charge(m);
      if (!q)
        q = qm;
      else if (*q != qm)
        return std::nullopt;
    }
    return e.is_zero() ? std::optional<Rat>(Rat(0)) : q;
  }
  long max_filtration_degree(const FieldExpr& e) const {
    long d = 0;
    for (const auto& [m, c] : e.terms()) d = std::max(d, filtration_degree(m));
    return d;
  }
  // Component of exact weight w and charge q.
  FieldExpr component(const FieldExpr& e, const Rat& w, const Rat& q) const {
    FieldExpr r;
    for (const auto& [m, c] : e.terms())
      if (weight(m) == w && charge(m) == q) r.add(m, c);
    return r;
  }
};

// Specialize every table coefficient at l = value. Pole -> PoleError.
Algebra specialize(const Algebra& a, const Rat& value);
FieldExpr specialize(const FieldExpr& e, const Rat& value);

// Display order used by printers and basis enumeration: weight, then letter
// count, then lexicographic letters.
bool display_less(const Algebra& alg, const Monomial& a, const Monomial& b);

}  // namespace vxa
