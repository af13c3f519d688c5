#include "vxa/qseries.hpp"

#include <sstream>

namespace vxa {

namespace {

// common exponent lattice: all exponents and the truncation differ from the
// leading exponent by multiples of 1/D
mpz_class exponent_lattice(const std::map<Rat, Rat>& terms, const Rat& trunc, const Rat& lead) {
  mpz_class D = 1;
  for (const auto& [e, c] : terms) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(e - lead).get_den().get_mpz_t());
  mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(trunc - lead).get_den().get_mpz_t());
  return D;
}

}  // namespace

QSeries QSeries::inverse() const {
  if (t_.empty()) throw std::domain_error("inverse of zero q-series");
  const Rat e0 = t_.begin()->first;
  const Rat c0 = t_.begin()->second;
  const Rat out_trunc = trunc_ - 2 * e0;
  QSeries r(out_trunc);
  mpz_class D = exponent_lattice(t_, trunc_, e0);
  Rat step(mpz_class(1), D);
  // b_k determined by sum_{j<=k} a_j b_{k-j} = delta_{k0} on the 1/D lattice
  std::map<Rat, Rat> b;  // offset -> coefficient, offset = exponent + e0
  long K = static_cast<long>(rat_ceil((out_trunc + e0) * Rat(D)).get_si());
  for (long k = 0; Rat(k) * step + (-e0) < out_trunc && k < K + 1; ++k) {
    Rat off = Rat(k) * step;
    Rat acc = (k == 0) ? Rat(1) : Rat(0);
    for (const auto& [e, c] : t_) {
      Rat j = e - e0;
      if (j > off || j == 0) continue;
      auto it = b.find(off - j);
      if (it != b.end()) acc -= c * it->second;
    }
    Rat val = acc / c0;
    if (val != 0) {
      b.emplace(off, val);
      r.add(off - e0, val);
    }
  }
  return r;
}

std::optional<Rat> QSeries::first_mismatch(const QSeries& a, const QSeries& b, const Rat& below) {
  Rat bound = std::min(below, std::min(a.trunc_, b.trunc_));
  auto ia = a.t_.begin();
  auto ib = b.t_.begin();
  while (ia != a.t_.end() || ib != b.t_.end()) {
    Rat ea = (ia != a.t_.end()) ? ia->first : bound;
    Rat eb = (ib != b.t_.end()) ? ib->first : bound;
    Rat e = std::min(ea, eb);
    if (e >= bound) break;
    Rat ca = (ea == e) ? ia->second : Rat(0);
    Rat cb = (eb == e) ? ib->second : Rat(0);
    if (ca != cb) return e;
    if (ea == e) ++ia;
    if (eb == e) ++ib;
  }
  return std::nullopt;
}

std::string QSeries::str(std::size_t max_terms) const {
  if (t_.empty()) return "0 + O(q^" + rat_str(trunc_) + ")";
  std::ostringstream os;
  std::size_t k = 0;
  for (const auto& [e, c] : t_) {
    if (k++ >= max_terms) {
      os << " + ...";
      break;
    }
    if (k > 1) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat ac = c < 0 ? Rat(-c) : c;
    if (e == 0)
      os << rat_str(ac);
    else {
      if (ac != 1) os << rat_str(ac) << "*";
      os << "q^" << (e.get_den() == 1 ? rat_str(e) : "(" + rat_str(e) + ")");
    }
  }
  os << " + O(q^" << rat_str(trunc_) << ")";
  return os.str();
}

// --- cyclotomics -------------------------------------------------------------

const Poly& Cyclo::cyclotomic_poly(long M) {
  static std::map<long, Poly> cache;
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d
  std::vector<Rat> xm(M + 1, Rat(0));
  xm[0] = -1;
  xm[M] = 1;
  Poly p{std::vector<Rat>(xm)};
  for (long d = 1; d < M; ++d)
    if (M % d == 0) p = p.divexact(cyclotomic_poly(d));
  return cache.emplace(M, std::move(p)).first->second;
}

void Cyclo::reduce() {
  const Poly& phi = cyclotomic_poly(M_);
  if (c_.degree() >= phi.degree()) c_ = c_.divmod(phi).second;
}

Cyclo Cyclo::from_rat(long M, const Rat& r) { return Cyclo(M, Poly(r)); }

Cyclo Cyclo::root_power(long M, long k) {
  k %= M;
  if (k < 0) k += M;
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = 1;
  return Cyclo(M, Poly(std::move(c)));
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) { return Cyclo(a.M_, a.c_ * b.c_); }

Rat Cyclo::rat_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
  return c_.is_zero() ? Rat(0) : c_.coeff(0);
}

// --- cyclotomic series --------------------------------------------------------

CycloSeries CycloSeries::from_rational(const QSeries& s, long M) {
  CycloSeries r(M, s.trunc());
  for (const auto& [e, c] : s.terms()) r.t_.emplace(e, Cyclo::from_rat(M, c));
  return r;
}

CycloSeries operator+(const CycloSeries& a, const CycloSeries& b) {
  CycloSeries r(a.M_, std::min(a.trunc_, b.trunc_));
  for (const auto& [e, c] : a.t_) r.add(e, c);
  for (const auto& [e, c] : b.t_) r.add(e, c);
  return r;
}

CycloSeries operator*(const CycloSeries& a, const CycloSeries& b) {
  Rat la = a.t_.empty() ? Rat(0) : a.t_.begin()->first;
  Rat lb = b.t_.empty() ? Rat(0) : b.t_.begin()->first;
  Rat t = std::min(a.trunc_ + lb, b.trunc_ + la);
  CycloSeries r(a.M_, t);
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      if (ea + eb >= t) break;
      r.add(ea + eb, ca * cb);
    }
  return r;
}

CycloSeries operator*(const Cyclo& s, const CycloSeries& a) {
  CycloSeries r(a.M_, a.trunc_);
  for (const auto& [e, c] : a.t_) r.add(e, s * c);
  return r;
}

CycloSeries CycloSeries::inverse() const {
  if (t_.empty()) throw std::domain_error("inverse of zero series");
  const Rat e0 = t_.begin()->first;
  const Cyclo& lead = t_.begin()->second;
  if (!lead.is_rational() || lead.rat_value() == 0)
    throw std::domain_error("cyclotomic series inverse needs a rational leading coefficient");
  Rat c0 = lead.rat_value();
  Rat out_trunc = trunc_ - 2 * e0;
  CycloSeries r(M_, out_trunc);
  mpz_class D = 1;
  for (const auto& [e, c] : t_) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(e - e0).get_den().get_mpz_t());
  mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(trunc_ - e0).get_den().get_mpz_t());
  Rat step(mpz_class(1), D);
  std::map<Rat, Cyclo> b;
  for (long k = 0; Rat(k) * step + (-e0) < out_trunc; ++k) {
    Rat off = Rat(k) * step;
    Cyclo acc = Cyclo::from_rat(M_, k == 0 ? 1 : 0);
    for (const auto& [e, c] : t_) {
      Rat j = e - e0;
      if (j > off || j == 0) continue;
      auto it = b.find(off - j);
      if (it != b.end()) acc = acc - c * it->second;
    }
    Cyclo val = (Rat(1) / c0) * acc;
    if (!val.is_zero()) {
      b.emplace(off, val);
      r.add(off - e0, val);
    }
  }
  return r;
}

std::optional<Rat> CycloSeries::first_irrational() const {
  for (const auto& [e, c] : t_)
    if (!c.is_rational()) return e;
  return std::nullopt;
}

QSeries CycloSeries::rational_part() const {
  QSeries r(trunc_);
  for (const auto& [e, c] : t_) r.add(e, c.rat_value());
  return r;
}

}  // namespace vxa
