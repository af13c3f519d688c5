#pragma once

#include <map>
#include <optional>
#include <string>

#include "vxa/poly.hpp"

namespace vxa {

// Truncated formal q-series with exact rational exponents and coefficients;
// all stored exponents are < trunc(). Arithmetic is exact below truncation.
class QSeries {
 public:
  explicit QSeries(Rat trunc = 0) : trunc_(std::move(trunc)) {}
  static QSeries one(const Rat& trunc) {
    QSeries s(trunc);
    s.add(0, 1);
    return s;
  }

  const Rat& trunc() const { return trunc_; }
  const std::map<Rat, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Rat& e, const Rat& c) {
    if (c == 0 || e >= trunc_) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
  Rat coeff(const Rat& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
  }

  QSeries truncated(const Rat& t) const {
    QSeries r(std::min(t, trunc_));
    for (const auto& [e, c] : t_) r.add(e, c);
    return r;
  }
  QSeries shifted(const Rat& s) const {  // multiply by q^s
    QSeries r(trunc_ + s);
    for (const auto& [e, c] : t_) r.t_.emplace(e + s, c);
    return r;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc_, b.trunc_));
    for (const auto& [e, c] : a.t_) r.add(e, c);
    for (const auto& [e, c] : b.t_) r.add(e, c);
    return r;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc_, b.trunc_));
    for (const auto& [e, c] : a.t_) r.add(e, c);
    for (const auto& [e, c] : b.t_) r.add(e, -c);
    return r;
  }
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    Rat t = mul_trunc(a, b);
    QSeries r(t);
    for (const auto& [ea, ca] : a.t_) {
      if (!b.t_.empty() && ea + b.t_.begin()->first >= t) break;
      for (const auto& [eb, cb] : b.t_) {
        if (ea + eb >= t) break;
        r.add(ea + eb, ca * cb);
      }
    }
    return r;
  }
  friend QSeries operator*(const Rat& s, const QSeries& a) {
    QSeries r(a.trunc_);
    if (s == 0) return r;
    for (const auto& [e, c] : a.t_) r.t_.emplace(e, c * s);
    return r;
  }
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }

  std::optional<Rat> leading_exponent() const {
    if (t_.empty()) return std::nullopt;
    return t_.begin()->first;
  }

  // Multiplicative inverse; the leading coefficient must be nonzero. Valid
  // below trunc - 2*leading_exponent.
  QSeries inverse() const;

  // Exponent of the first disagreement below the stated bound (and both
  // truncations); nullopt when the series agree on that range.
  static std::optional<Rat> first_mismatch(const QSeries& a, const QSeries& b, const Rat& below);

  std::string str(std::size_t max_terms = 24) const;

 private:
  static Rat mul_trunc(const QSeries& a, const QSeries& b) {
    Rat la = a.t_.empty() ? Rat(0) : a.t_.begin()->first;
    Rat lb = b.t_.empty() ? Rat(0) : b.t_.begin()->first;
    return std::min(a.trunc_ + lb, b.trunc_ + la);
  }
  Rat trunc_;
  std::map<Rat, Rat> t_;
};

// Element of Q(zeta_M), stored as a polynomial reduced mod the M-th
// cyclotomic polynomial.
class Cyclo {
 public:
  explicit Cyclo(long M = 1) : M_(M) {}
  static Cyclo from_rat(long M, const Rat& r);
  static Cyclo root_power(long M, long k);  // zeta_M^k
  static const Poly& cyclotomic_poly(long M);

  long order() const { return M_; }
  bool is_zero() const { return c_.is_zero(); }
  bool is_rational() const { return c_.is_constant(); }
  Rat rat_value() const;

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) { return Cyclo(a.M_, a.c_ + b.c_); }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return Cyclo(a.M_, a.c_ - b.c_); }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Rat& s, const Cyclo& a) { return Cyclo(a.M_, a.c_ * s); }
  friend bool operator==(const Cyclo&, const Cyclo&) = default;

 private:
  Cyclo(long M, Poly c) : M_(M), c_(std::move(c)) { reduce(); }
  void reduce();
  long M_;
  Poly c_;
};

// q-series with cyclotomic coefficients (all of one order).
class CycloSeries {
 public:
  explicit CycloSeries(long M = 1, Rat trunc = 0) : M_(M), trunc_(std::move(trunc)) {}
  static CycloSeries from_rational(const QSeries& s, long M);

  long order() const { return M_; }
  const Rat& trunc() const { return trunc_; }
  const std::map<Rat, Cyclo>& terms() const { return t_; }

  void add(const Rat& e, const Cyclo& c) {
    if (c.is_zero() || e >= trunc_) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend CycloSeries operator+(const CycloSeries& a, const CycloSeries& b);
  friend CycloSeries operator*(const CycloSeries& a, const CycloSeries& b);
  friend CycloSeries operator*(const Cyclo& s, const CycloSeries& a);
  CycloSeries inverse() const;  // leading coefficient must be rational nonzero

  // nullopt if every coefficient is rational; otherwise the first exponent
  // with an irrational coefficient.
  std::optional<Rat> first_irrational() const;
  QSeries rational_part() const;  // asserts all coefficients rational

 private:
  long M_;
  Rat trunc_;
  std::map<Rat, Cyclo> t_;
};

}  // namespace vxa
