#pragma once

#include <string>
#include <vector>

#include "vxa/rational.hpp"

namespace vxa {

// Dense univariate polynomial in the level parameter l, with exact rational
// coefficients. Invariant: no trailing zero coefficients (leading coefficient
// of a nonzero polynomial is nonzero).
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c) {
    if (c != 0) c_.push_back(c);
  }
  Poly(long c) : Poly(Rat(c)) {}
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly variable() { return Poly(std::vector<Rat>{0, 1}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const Rat& coeff(std::size_t i) const {
    static const Rat kZero = 0;
    return i < c_.size() ? c_[i] : kZero;
  }
  const Rat& leading() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Poly& a, const Rat& s) {
    if (s == 0) return Poly();
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend Poly operator*(const Rat& s, const Poly& a) { return a * s; }
  Poly operator/(const Rat& s) const {
    if (s == 0) throw std::domain_error("polynomial division by zero scalar");
    Poly r = *this;
    for (auto& x : r.c_) x /= s;
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Rat eval(const Rat& x) const {  // Horner
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q, r = *this;
    q.c_.assign(std::max<long>(degree() - d.degree() + 1, 0), Rat(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      long k = r.degree() - d.degree();
      Rat f = r.leading() / d.leading();
      q.c_[k] += f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + k] -= f * d.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  // Exact division; throws if the remainder is nonzero.
  Poly divexact(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this / leading();
  }

  Poly pow(long e) const {
    Poly acc = Poly(1), b = *this;
    while (e) {
      if (e & 1) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  }

  // Content: positive rational c such that *this / c has coprime integer
  // coefficients. Zero polynomial has content 0.
  Rat content() const {
    if (is_zero()) return 0;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& x : c_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// Monic gcd over Q[l] (Euclid). gcd(0,0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string poly_str(const Poly& p);

}  // namespace vxa
