#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "vxa/poly.hpp"

namespace vxa {

struct PoleError : std::domain_error {
  explicit PoleError(const std::string& factor)
      : std::domain_error("evaluation at a pole; vanishing denominator factor: " + factor),
        offending_factor(factor) {}
  std::string offending_factor;
};

// Element of Q(l). Canonical form: num/den reduced (monic gcd is 1), den has
// coprime integer coefficients and positive leading coefficient. Equality of
// canonical forms is coefficient-wise and agrees with cross-multiplication.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const Rat& c) : num_(c), den_(1) { reduce(); }
  RatFunc(long c) : num_(c), den_(1) { reduce(); }
  RatFunc(const Poly& p) : num_(p), den_(1) { reduce(); }
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc ell() { return RatFunc(Poly::variable()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant() && den_.coeff(0) == 1; }
  Rat constant_value() const {
    if (!is_constant()) throw std::domain_error("RatFunc is not constant");
    if (num_.is_zero()) return 0;
    return num_.coeff(0) / den_.coeff(0);
  }
  long total_degree() const { return std::max<long>(num_.degree(), 0) + std::max<long>(den_.degree(), 0); }

  RatFunc operator-() const { return RatFunc(Raw{}, -num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q(l)");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(long e) const {
    if (e < 0) return RatFunc(1) / pow(-e);
    return RatFunc(num_.pow(e), den_.pow(e));
  }

  // Evaluation homomorphism at l = v. Throws PoleError naming the offending
  // factor (l - v) when v is a root of the denominator.
  Rat specialize(const Rat& v) const {
    Rat d = den_.eval(v);
    if (d == 0) throw PoleError("l - (" + rat_str(v) + ")");
    return num_.eval(v) / d;
  }

  std::optional<Rat> try_specialize(const Rat& v) const {
    Rat d = den_.eval(v);
    if (d == 0) return std::nullopt;
    return num_.eval(v) / d;
  }

 private:
  struct Raw {};
  RatFunc(Raw, Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}

  void reduce() {
    if (den_.is_zero()) throw std::domain_error("zero denominator in Q(l)");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
    }
    // joint-primitive scaling: integer coefficients overall, coprime across
    // numerator and denominator, positive denominator leading coefficient
    Rat c = rat_gcd(num_.content(), den_.content());
    if (den_.leading() < 0) c = -c;
    num_ = num_ / c;
    den_ = den_ / c;
  }

  Poly num_, den_;
};

std::string ratfunc_str(const RatFunc& r);
RatFunc parse_ratfunc(const std::string& text);

}  // namespace vxa

namespace Eigen {
template <>
struct NumTraits<vxa::RatFunc> : GenericNumTraits<vxa::RatFunc> {
  typedef vxa::RatFunc Real;
  typedef vxa::RatFunc NonInteger;
  typedef vxa::RatFunc Nested;
  static inline Real epsilon() { return vxa::RatFunc(0); }
  static inline Real dummy_precision() { return vxa::RatFunc(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60
  };
};
}  // namespace Eigen
