#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace vxa {

// Exact rational scalar. All arithmetic in the library is exact; there is no
// floating point anywhere in the symbolic core.
using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }
inline Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p())
    throw std::domain_error("rational does not fit a machine integer");
  return r.get_num().get_si();
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    return 1 / rat_pow(base, -e);
  }
  Rat acc = 1, b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline Rat factorial(long n) {
  Rat acc = 1;
  for (long i = 2; i <= n; ++i) acc *= i;
  return acc;
}

// binom(x, j) = x(x-1)...(x-j+1)/j! for arbitrary rational x (falling factorial
// definition; needed for half-integer mode indices).
inline Rat binom(const Rat& x, long j) {
  if (j < 0) return 0;
  Rat acc = 1;
  for (long i = 0; i < j; ++i) acc *= (x - i);
  return acc / factorial(j);
}

inline Rat binom(long n, long j) { return binom(Rat(n), j); }

// gcd on nonnegative rationals: gcd(a/b, c/d) = gcd(ad, cb)/(bd)
inline Rat rat_gcd(const Rat& a, const Rat& b) {
  mpz_class g;
  mpz_class x = a.get_num() * b.get_den(), y = b.get_num() * a.get_den();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  Rat r(g, a.get_den() * b.get_den());
  r.canonicalize();
  return r;
}

// floor of a rational
inline mpz_class rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline mpz_class rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace vxa
