#include "vxa/characters.hpp"

#include <algorithm>
#include <set>

namespace vxa {

// --- JacobiSeries ------------------------------------------------------------

void JacobiSeries::add(long z, const Rat& e, const Rat& c) {
  if (c == 0 || e >= trunc_) return;
  auto [it, inserted] = comp_.try_emplace(z, QSeries(trunc_));
  it->second.add(e, c);
  if (it->second.is_zero()) comp_.erase(it);
}

JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
  JacobiSeries r(std::min(a.trunc_, b.trunc_));
  for (const auto& [z, s] : a.comp_)
    for (const auto& [e, c] : s.terms()) r.add(z, e, c);
  for (const auto& [z, s] : b.comp_)
    for (const auto& [e, c] : s.terms()) r.add(z, e, c);
  return r;
}

JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) {
  JacobiSeries r(std::min(a.trunc_, b.trunc_));
  for (const auto& [z, s] : a.comp_)
    for (const auto& [e, c] : s.terms()) r.add(z, e, c);
  for (const auto& [z, s] : b.comp_)
    for (const auto& [e, c] : s.terms()) r.add(z, e, -c);
  return r;
}

namespace {

std::optional<Rat> jac_lead(const JacobiSeries& j) {
  std::optional<Rat> lead;
  for (const auto& [z, s] : j.components()) {
    auto l = s.leading_exponent();
    if (l && (!lead || *l < *lead)) lead = l;
  }
  return lead;
}

}  // namespace

JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) {
  auto la = jac_lead(a), lb = jac_lead(b);
  if (!la || !lb) return JacobiSeries(a.trunc_ + b.trunc_);
  JacobiSeries r(std::min(a.trunc_ + *lb, b.trunc_ + *la));
  for (const auto& [za, sa] : a.components())
    for (const auto& [zb, sb] : b.components())
      for (const auto& [ea, ca] : sa.terms()) {
        for (const auto& [eb, cb] : sb.terms()) {
          if (ea + eb >= r.trunc()) break;
          r.add(za + zb, ea + eb, ca * cb);
        }
      }
  return r;
}

JacobiSeries operator*(const Rat& s, const JacobiSeries& a) {
  JacobiSeries r(a.trunc_);
  if (s == 0) return r;
  for (const auto& [z, qs] : a.comp_)
    for (const auto& [e, c] : qs.terms()) r.add(z, e, c * s);
  return r;
}

JacobiSeries JacobiSeries::inverse() const {
  // collect all terms sorted by q-exponent
  std::map<Rat, std::map<long, Rat>> rows;
  for (const auto& [z, s] : comp_)
    for (const auto& [e, c] : s.terms()) rows[e][z] = c;
  if (rows.empty()) throw std::domain_error("inverse of zero Jacobi series");
  const Rat e0 = rows.begin()->first;
  const auto& lead_row = rows.begin()->second;
  if (lead_row.size() != 1)
    throw std::domain_error("Jacobi series inverse needs a monomial leading coefficient");
  const long z0 = lead_row.begin()->first;
  const Rat c0 = lead_row.begin()->second;

  mpz_class D = 1;
  for (const auto& [e, row] : rows)
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(e - e0).get_den().get_mpz_t());
  mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), Rat(trunc_ - e0).get_den().get_mpz_t());
  Rat step(mpz_class(1), D);
  const Rat out_trunc = trunc_ - 2 * e0;

  JacobiSeries r(out_trunc);
  std::map<Rat, std::map<long, Rat>> b;  // offset -> z-row of the inverse
  for (long k = 0; Rat(k) * step - e0 < out_trunc; ++k) {
    Rat off = Rat(k) * step;
    std::map<long, Rat> acc;
    if (k == 0) acc[0] = 1;
    for (const auto& [e, row] : rows) {
      Rat j = e - e0;
      if (j > off) break;
      if (j == 0) continue;
      auto it = b.find(off - j);
      if (it == b.end()) continue;
      for (const auto& [za, ca] : row)
        for (const auto& [zb, cb] : it->second) {
          Rat& slot = acc[za + zb];
          slot -= ca * cb;
        }
    }
    std::map<long, Rat> out_row;
    for (auto& [z, c] : acc) {
      if (c == 0) continue;
      out_row[z - z0] = c / c0;
      r.add(z - z0, off - e0, c / c0);
    }
    if (!out_row.empty()) b.emplace(off, std::move(out_row));
  }
  return r;
}

JacobiSeries JacobiSeries::mul_q(const QSeries& s) const {
  auto lead = jac_lead(*this);
  auto ls = s.leading_exponent();
  if (!lead || !ls) return JacobiSeries(trunc_);
  JacobiSeries r(std::min(trunc_ + *ls, s.trunc() + *lead));
  for (const auto& [z, qs] : comp_)
    for (const auto& [e, c] : qs.terms())
      for (const auto& [es, cs] : s.terms()) {
        if (e + es >= r.trunc()) break;
        r.add(z, e + es, c * cs);
      }
  return r;
}

JacobiSeries JacobiSeries::shifted(const Rat& s) const {
  JacobiSeries r(trunc_ + s);
  for (const auto& [z, qs] : comp_) r.comp_.emplace(z, qs.shifted(s));
  return r;
}

JacobiSeries JacobiSeries::truncated(const Rat& t) const {
  JacobiSeries r(std::min(t, trunc_));
  for (const auto& [z, qs] : comp_)
    for (const auto& [e, c] : qs.terms()) r.add(z, e, c);
  return r;
}

QSeries JacobiSeries::at_z1() const {
  QSeries r(trunc_);
  for (const auto& [z, qs] : comp_)
    for (const auto& [e, c] : qs.terms()) r.add(e, c);
  return r;
}

CycloSeries JacobiSeries::at_root(long M, long t) const {
  CycloSeries r(M, trunc_);
  for (const auto& [z, qs] : comp_) {
    Cyclo zc = Cyclo::root_power(M, t * z);
    for (const auto& [e, c] : qs.terms()) r.add(e, c * zc);
  }
  return r;
}

std::optional<std::pair<Rat, long>> JacobiSeries::min_term() const {
  std::optional<std::pair<Rat, long>> best;
  for (const auto& [z, qs] : comp_) {
    auto l = qs.leading_exponent();
    if (!l) continue;
    if (!best || *l < best->first ||
        (*l == best->first && std::abs(z) < std::abs(best->second)))
      best = std::make_pair(*l, z);
  }
  return best;
}

std::optional<std::pair<Rat, long>> JacobiSeries::first_mismatch(const JacobiSeries& a,
                                                                 const JacobiSeries& b,
                                                                 const Rat& below) {
  Rat bound = std::min(below, std::min(a.trunc_, b.trunc_));
  std::optional<std::pair<Rat, long>> best;
  std::set<long> zs;
  for (const auto& [z, s] : a.comp_) zs.insert(z);
  for (const auto& [z, s] : b.comp_) zs.insert(z);
  for (long z : zs) {
    auto m = QSeries::first_mismatch(a.component(z), b.component(z), bound);
    if (m && (!best || *m < best->first)) best = std::make_pair(*m, z);
  }
  return best;
}

// --- eta and theta -------------------------------------------------------------

QSeries eta_series(const Rat& N) {
  QSeries prod = QSeries::one(N);
  for (long i = 1; Rat(i) < N; ++i) {
    QSeries f = QSeries::one(N);
    f.add(i, -1);
    prod = prod * f;
  }
  return prod.shifted(rat(1, 24));
}

JacobiSeries jacobi_theta(const Rat& N, bool product_from_zero) {
  JacobiSeries prod(N);
  prod.add(0, 0, 1);
  for (long i = 1; Rat(i) < N; ++i) {
    JacobiSeries f(N);
    f.add(0, 0, 1);
    f.add(0, i, -1);
    prod = prod * f;
  }
  for (long j = product_from_zero ? 0 : 1;; ++j) {
    Rat e = rat(1, 2) + j;
    if (e >= N) break;
    for (long z : {1L, -1L}) {
      JacobiSeries f(N);
      f.add(0, 0, 1);
      f.add(z, e, -1);
      prod = prod * f;
    }
  }
  return prod.truncated(N);
}

JacobiSeries lattice_theta(long ell, long s, const Rat& N, ThetaZExp mode) {
  if (mode == ThetaZExp::Charge && ((s % 3) + 3) % 3 != 0)
    throw std::invalid_argument("charge z-grading of theta_s needs 3 | s");
  JacobiSeries out(N);
  // exponent (6 ell n + s)^2 / (12 ell) < N  iff  |6 ell n + s| < sqrt(12 ell N)
  mpz_class bound2 = rat_ceil(Rat(12 * ell) * N);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), bound2.get_mpz_t());
  long B = (root.get_si() + std::abs(s)) / (6 * ell) + 2;
  for (long n = -B; n <= B; ++n) {
    Rat a = Rat(6 * ell * n + s);
    Rat e = a * a / Rat(12 * ell);
    if (e >= N) continue;
    long zexp = (mode == ThetaZExp::Paper) ? (3 * ell * n + s) : (6 * ell * n + s) / 3;
    out.add(zexp, e, 1);
  }
  return out;
}

Rat bp_central_charge(long ell) {
  return Rat(-2 * ell * (6 * ell - 7)) / Rat(2 * ell + 3);
}

// --- the W_ell character -------------------------------------------------------

namespace {

// Weyl numerator over W(sl_3) x 2 Q^dual applied to k Lambda_0, k = ell - 3/2.
JacobiSeries bp_weyl_numerator(long ell, const Rat& N, bool signs) {
  RootSystemA sl3(3);
  AffineWeight klam{Rat(ell) - rat(3, 2), {Rat(0), Rat(0)}, Rat(0)};

  auto term = [&](const RootSystemA::WeylElement& u, long a, long b, Rat& qexp, long& zexp) {
    std::vector<Rat> beta{Rat(2 * a), Rat(2 * b)};
    AffineWeight w = shifted_action(sl3, u, beta, klam);
    qexp = -w.delta - (w.finite[0] + w.finite[1]) / 2;
    Rat z = w.finite[1] - w.finite[0];
    zexp = static_cast<long>(rat_floor(z).get_si());
    return true;
  };

  // certified enumeration box: per Weyl element the q-exponent is an exact
  // positive-definite quadratic in (a, b); grow B until the continuous
  // critical point sits inside the box and the boundary minimum exceeds N.
  long B = 2;
  for (;; ++B) {
    bool ok = true;
    for (const auto& u : sl3.weyl_elements()) {
      // interpolate the quadratic from six exact evaluations
      auto ev = [&](long a, long b) {
        Rat e;
        long z;
        term(u, a, b, e, z);
        return e;
      };
      Rat c00 = ev(0, 0), c10 = ev(1, 0), cm10 = ev(-1, 0), c01 = ev(0, 1), c0m1 = ev(0, -1),
          c11 = ev(1, 1);
      Rat qaa = (c10 + cm10 - 2 * c00) / 2;
      Rat qbb = (c01 + c0m1 - 2 * c00) / 2;
      Rat la = (c10 - cm10) / 2;
      Rat lb = (c01 - c0m1) / 2;
      Rat qab2 = c11 - c00 - qaa - qbb - la - lb;  // 2*Q_ab
      std::vector<std::vector<Rat>> Q{{qaa, qab2 / 2}, {qab2 / 2, qbb}};
      std::vector<Rat> lin{la, lb};
      if (!quadratic_vertex_inside_box(Q, lin, B) ||
          quadratic_min_outside_box(Q, lin, c00, B) < N)
        ok = false;
    }
    if (ok) break;
    if (B > 200) throw std::runtime_error("Weyl sum truncation bound not found");
  }

  JacobiSeries num(N);
  for (const auto& u : sl3.weyl_elements())
    for (long a = -B; a <= B; ++a)
      for (long b = -B; b <= B; ++b) {
        Rat e;
        long z;
        term(u, a, b, e, z);
        if (e < N) num.add(z, e, signs ? Rat(u.det) : Rat(1));
      }
  return num;
}

}  // namespace

JacobiSeries bp_character_normalized(long ell, const Rat& N, BpCalibration* calib) {
  const Rat margin = 2;
  // literal reading first (theta product from j >= 1, no Weyl signs), then
  // the corrected readings; accept the first whose normalized form shows the
  // free-generation structure at low order (unit vacuum, the J state, the
  // G^pm states).
  const std::pair<bool, bool> readings[] = {
      {false, false}, {false, true}, {true, false}, {true, true}};
  for (auto [from_zero, signs] : readings) {
    {
      BpCalibration attempt;
      attempt.theta_from_zero = from_zero;
      attempt.weyl_signs = signs;
      Rat work = N + margin;
      JacobiSeries num = bp_weyl_numerator(ell, work, signs);
      JacobiSeries den = jacobi_theta(work, from_zero).mul_q(eta_series(work));
      JacobiSeries ratio = num * den.inverse();
      auto lead = ratio.min_term();
      if (!lead || lead->second != 0) continue;
      Rat lead_coeff = ratio.component(lead->second).coeff(lead->first);
      attempt.q_shift = -lead->first;
      attempt.leading_scale = Rat(1) / lead_coeff;
      JacobiSeries normalized = attempt.leading_scale * ratio.shifted(attempt.q_shift);
      normalized = normalized.truncated(N);
      // sanity gates from the free-generation structure
      if (normalized.component(0).coeff(0) != 1) continue;
      if (normalized.component(0).coeff(1) != 1) continue;           // the J state
      if (normalized.component(1).coeff(rat(3, 2)) != 1) continue;   // the G+ state
      if (normalized.component(-1).coeff(rat(3, 2)) != 1) continue;  // the G- state
      if (calib) *calib = attempt;
      return normalized;
    }
  }
  throw std::runtime_error("bp_character: no calibration reproduces the low-order structure");
}

JacobiSeries bp_character(long ell, const Rat& N, BpCalibration* calib) {
  Rat shift = -bp_central_charge(ell) / 24;
  return bp_character_normalized(ell, N - shift, calib).shifted(shift);
}

// --- W(sl_n) minimal series -----------------------------------------------------

QSeries w_minimal_character(long n, long s, const Rat& N) {
  const long p = 3;
  RootSystemA sl(static_cast<int>(n));
  const int r = sl.rank();
  const Rat K = Rat((n + p) * (n + 1));
  std::vector<Rat> lam = sl.fundamental(static_cast<int>(s));
  std::vector<Rat> rho = sl.rho();
  for (int i = 0; i < r; ++i) lam[i] = Rat(p) * lam[i] + rho[i];

  const Rat work = N + Rat(n - 1) / 24 + 1;
  QSeries num(work);
  for (const auto& u : sl.weyl_elements()) {
    std::vector<Rat> base = sl.apply(u, lam);
    for (int i = 0; i < r; ++i) base[i] = base[i] / Rat(n + p) - rho[i] / Rat(n + 1);
    // E(beta) = (K/2)|base + beta|^2: Q = (K/2) A, b = K A base, c = (K/2)|base|^2
    std::vector<std::vector<Rat>> Q(r, std::vector<Rat>(r));
    std::vector<Rat> lin(r, 0);
    for (int i = 0; i < r; ++i) {
      std::vector<Rat> ei(r, 0);
      ei[i] = 1;
      for (int j = 0; j < r; ++j) {
        std::vector<Rat> ej(r, 0);
        ej[j] = 1;
        Q[i][j] = K / 2 * sl.form(ei, ej);
      }
      lin[i] = K * sl.form(ei, base);
    }
    Rat c0 = K / 2 * sl.form(base, base);
    long B = 2;
    while (!(quadratic_vertex_inside_box(Q, lin, B) &&
             quadratic_min_outside_box(Q, lin, c0, B) >= work)) {
      if (++B > 100) throw std::runtime_error("minimal-series truncation bound not found");
    }
    std::vector<long> idx(r, -B);
    for (;;) {
      std::vector<Rat> beta(r);
      for (int i = 0; i < r; ++i) beta[i] = Rat(idx[i]);
      std::vector<Rat> v = base;
      for (int i = 0; i < r; ++i) v[i] += beta[i];
      Rat e = K / 2 * sl.form(v, v);
      if (e < work) num.add(e, Rat(u.det));
      int pos = 0;
      while (pos < r && ++idx[pos] > B) idx[pos++] = -B;
      if (pos == r) break;
    }
  }
  QSeries etapow = QSeries::one(work);
  QSeries eta = eta_series(work);
  for (long i = 0; i < n - 1; ++i) etapow = etapow * eta;
  return (num * etapow.inverse()).truncated(N);
}

QSeries virasoro_minimal_character(long p, long q, long r, long s, const Rat& N) {
  const Rat work = N + 1;
  QSeries num(work);
  Rat denom = Rat(4 * p * q);
  for (long k = -64; k <= 64; ++k) {
    Rat a = Rat(2 * p * q * k + q * r - p * s);
    Rat b = Rat(2 * p * q * k + q * r + p * s);
    if (a * a / denom < work) num.add(a * a / denom, 1);
    if (b * b / denom < work) num.add(b * b / denom, -1);
  }
  return (num * eta_series(work).inverse()).truncated(N);
}

// --- decomposition and corollary -------------------------------------------------

DecompositionReport verify_decomposition(long ell, const Rat& N) {
  DecompositionReport rep;
  rep.ell = ell;
  const long n = 2 * ell;
  JacobiSeries lhs = bp_character(ell, N, &rep.calib);

  QSeries eta = eta_series(N + 1);
  JacobiSeries rhs(N);
  std::vector<QSeries> wmin;
  for (long s = 0; s < 2 * ell; ++s) {
    wmin.push_back(w_minimal_character(n, s, N + 1));
    JacobiSeries theta = lattice_theta(ell, 3 * s, N + 1, ThetaZExp::Charge);
    rhs = rhs + theta.mul_q(wmin.back()).div_q(eta).truncated(N);
  }

  rep.order = std::min(lhs.trunc(), rhs.trunc());
  rep.first_mismatch = JacobiSeries::first_mismatch(lhs, rhs, rep.order);
  rep.matched = !rep.first_mismatch.has_value();

  // Inverse formula: ch L_{3 Lambda_s} = (1/2l) (eta/theta_{3s}(tau,0))
  //   sum_t zeta^{-ts} ch W(tau, zeta^t), zeta of order 2l (the charge sectors
  // are graded mod 2l).
  const long M = 2 * ell;
  rep.inverse_ok = true;
  for (long s = 0; s < 2 * ell && rep.inverse_ok; ++s) {
    CycloSeries sum(M, lhs.trunc());
    for (long t = 0; t < M; ++t) {
      CycloSeries at = lhs.at_root(M, t);
      sum = sum + Cyclo::root_power(M, -t * s) * at;
    }
    QSeries theta0 = lattice_theta(ell, 3 * s, N + 1, ThetaZExp::Charge).at_z1();
    QSeries factor = rat(1, 2 * ell) * (eta * theta0.inverse());
    CycloSeries rhs_s = sum * CycloSeries::from_rational(factor, M);
    if (rhs_s.first_irrational()) {
      rep.inverse_ok = false;
      rep.detail = "inverse formula produced an irrational coefficient at s=" + std::to_string(s);
      break;
    }
    Rat bound = std::min(rhs_s.trunc(), wmin[s].trunc());
    auto mm = QSeries::first_mismatch(rhs_s.rational_part(), wmin[s], bound);
    if (mm) {
      rep.inverse_ok = false;
      rep.detail = "inverse formula mismatch at s=" + std::to_string(s) + ", q^" + rat_str(*mm);
    }
  }

  // Orthogonality kernel (1/2l) sum_t zeta^{t(s-s')} = delta_{s,s'}.
  rep.orthogonality_ok = true;
  for (long s = 0; s < M; ++s)
    for (long sp = 0; sp < M; ++sp) {
      Cyclo acc = Cyclo::from_rat(M, 0);
      for (long t = 0; t < M; ++t) acc = acc + Cyclo::root_power(M, t * (s - sp));
      acc = rat(1, 2 * ell) * acc;
      Cyclo expect = Cyclo::from_rat(M, s == sp ? 1 : 0);
      if (!(acc == expect)) rep.orthogonality_ok = false;
    }
  return rep;
}

CorollaryReport verify_corollary(long ell, long s, const Rat& N) {
  CorollaryReport rep;
  rep.ell = ell;
  rep.s = s;
  const long n = 2 * ell;
  const long M = 2 * ell;
  JacobiSeries chw = bp_character(ell, N, &rep.calib);
  QSeries eta = eta_series(N + 1);

  CycloSeries sum(M, chw.trunc());
  for (long t = 0; t < M; ++t) sum = sum + Cyclo::root_power(M, -t * s) * chw.at_root(M, t);
  QSeries theta0 = lattice_theta(ell, 3 * s, N + 1, ThetaZExp::Charge).at_z1();
  QSeries factor = rat(1, 2 * ell) * (eta * theta0.inverse());
  CycloSeries rhs = sum * CycloSeries::from_rational(factor, M);

  QSeries lhs = w_minimal_character(n, s, N + 1);
  // the displayed identity carries eta^{n-1} on both sides; multiply through
  QSeries etapow = QSeries::one(N + 1);
  for (long i = 0; i < n - 1; ++i) etapow = etapow * eta;
  CycloSeries rhs_num = rhs * CycloSeries::from_rational(etapow, M);
  QSeries lhs_num = lhs * etapow;

  rep.order = std::min(rhs_num.trunc(), lhs_num.trunc());
  if (auto irr = rhs_num.first_irrational()) {
    rep.matched = false;
    rep.first_mismatch = irr;
    return rep;
  }
  rep.first_mismatch = QSeries::first_mismatch(lhs_num, rhs_num.rational_part(), rep.order);
  rep.matched = !rep.first_mismatch.has_value();
  return rep;
}

}  // namespace vxa
