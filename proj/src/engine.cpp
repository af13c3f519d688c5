#include "vxa/engine.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace vxa {

namespace {

thread_local int g_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++g_depth > 20000)
      throw std::runtime_error("rewriting recursion exceeded depth bound (non-local table?)");
  }
  ~DepthGuard() { --g_depth; }
};

int koszul(bool oa, bool ob) { return (oa && ob) ? -1 : 1; }

Monomial rest_of(const Monomial& m) {
  return Monomial(std::vector<Letter>(m.letters.begin() + 1, m.letters.end()));
}

Monomial cons(Letter x, const Monomial& m) {
  std::vector<Letter> ls;
  ls.reserve(m.size() + 1);
  ls.push_back(x);
  ls.insert(ls.end(), m.letters.begin(), m.letters.end());
  return Monomial(std::move(ls));
}

// Can x stand immediately before the first letter of a normal monomial
// starting with y? Within one generator derivative orders are non-increasing,
// strictly decreasing for odd generators.
bool can_precede(const Algebra& alg, Letter x, Letter y) {
  if (x.gen != y.gen) return x.gen < y.gen;
  if (alg.gens[x.gen].odd) return x.der > y.der;
  return x.der >= y.der;
}

void encode_mono(std::string& key, const Monomial& m) {
  for (const auto& L : m.letters) {
    key.push_back(static_cast<char>(L.gen & 0xff));
    key.push_back(static_cast<char>(L.gen >> 8));
    key.push_back(static_cast<char>(L.der & 0xff));
    key.push_back(static_cast<char>(L.der >> 8));
  }
}

std::string product_key(const Monomial& a, const Monomial& b, long n) {
  std::string key;
  key.reserve(a.size() * 4 + b.size() * 4 + 6);
  long biased = n + 1000000;
  key.push_back(static_cast<char>(biased & 0xff));
  key.push_back(static_cast<char>((biased >> 8) & 0xff));
  key.push_back(static_cast<char>((biased >> 16) & 0xff));
  key.push_back(static_cast<char>(static_cast<unsigned char>(a.size())));
  encode_mono(key, a);
  encode_mono(key, b);
  return key;
}

}  // namespace

FieldExpr Engine::nth(const FieldExpr& a, const FieldExpr& b, long n) const {
  FieldExpr out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_scaled(mono_nth_cached(ma, mb, n), ca * cb);
  return out;
}

FieldExpr Engine::expr_nth(const FieldExpr& a, const Monomial& b, long n) const {
  FieldExpr out;
  for (const auto& [ma, ca] : a.terms()) out.add_scaled(mono_nth_cached(ma, b, n), ca);
  return out;
}

FieldExpr Engine::nth_mono_expr(const Monomial& a, const FieldExpr& b, long n) const {
  FieldExpr out;
  for (const auto& [mb, cb] : b.terms()) out.add_scaled(mono_nth_cached(a, mb, n), cb);
  return out;
}

FieldExpr Engine::derivative(const FieldExpr& a, long k) const {
  FieldExpr cur = a;
  for (long i = 0; i < k; ++i) {
    FieldExpr next;
    for (const auto& [m, c] : cur.terms()) next.add_scaled(derivative_mono(m), c);
    cur = std::move(next);
  }
  return cur;
}

FieldExpr Engine::derivative_mono(const Monomial& m) const {
  if (m.is_vacuum()) return FieldExpr::zero();
  if (m.size() == 1)
    return FieldExpr::term(Monomial::single(m.letters[0].gen, m.letters[0].der + 1), RatFunc(1));
  std::string key;
  encode_mono(key, m);
  {
    std::shared_lock lk(mu_);
    auto it = der_cache_.find(key);
    if (it != der_cache_.end()) return it->second;
  }
  // Leibniz over the letters, then re-normalize each bumped word.
  FieldExpr out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<Letter> word = m.letters;
    ++word[i].der;
    out += normalize_word(word);
  }
  {
    std::unique_lock lk(mu_);
    der_cache_.emplace(std::move(key), out);
  }
  return out;
}

FieldExpr Engine::normalize_word(const std::vector<Letter>& word) const {
  if (word.empty()) return vacuum();
  FieldExpr acc = FieldExpr::term(Monomial::single(word.back().gen, word.back().der), RatFunc(1));
  for (std::size_t i = word.size() - 1; i-- > 0;)
    acc = nth_mono_expr(Monomial::single(word[i].gen, word[i].der), acc, -1);
  return acc;
}

FieldExpr Engine::wick_chain(const std::vector<FieldExpr>& factors) const {
  if (factors.empty()) return vacuum();
  FieldExpr acc = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) acc = nth(factors[i], acc, -1);
  return acc;
}

FieldExpr Engine::mono_nth_cached(const Monomial& a, const Monomial& b, long n) const {
  std::string key = product_key(a, b, n);
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  FieldExpr r = mono_nth(a, b, n);
  {
    std::unique_lock lk(mu_);
    cache_.emplace(std::move(key), r);
  }
  return r;
}

FieldExpr Engine::letter_pair(Letter x, Letter y, long n) const {
  // reduce derivatives with R1, then read the presentation table
  if (x.der > 0) {
    if (n == 0) return FieldExpr::zero();
    return RatFunc(Rat(-n)) * letter_pair(Letter{x.gen, static_cast<std::uint16_t>(x.der - 1)}, y, n - 1);
  }
  if (y.der > 0) {
    Letter y1{y.gen, static_cast<std::uint16_t>(y.der - 1)};
    FieldExpr r = derivative(letter_pair(x, y1, n), 1);
    if (n != 0) r.add_scaled(letter_pair(x, y1, n - 1), RatFunc(Rat(n)));
    return r;
  }
  const FieldExpr* e = alg_.table_entry(x.gen, y.gen, n);
  return e ? *e : FieldExpr::zero();
}

FieldExpr Engine::insert_letter(Letter x, const Monomial& m) const {
  const Letter head = m.letters[0];
  if (can_precede(alg_, x, head)) return FieldExpr::term(cons(x, m), RatFunc(1));
  const Monomial tail = rest_of(m);
  const Rat bound = alg_.gens[x.gen].weight + x.der + alg_.gens[head.gen].weight + head.der;

  if (x == head && alg_.gens[x.gen].odd) {
    // equal odd letters: 2 a o_{-1} (a o_{-1} c) = sum_j (-1)^j (a o_j a) o_{-2-j} c
    FieldExpr out;
    for (long j = 0; Rat(j) < bound; ++j) {
      FieldExpr t = letter_pair(x, x, j);
      if (t.is_zero()) continue;
      out.add_scaled(expr_nth(t, tail, -2 - j), RatFunc(rat(((j % 2) ? -1 : 1), 2)));
    }
    return out;
  }

  // x o_{-1} (head o_{-1} tail) = +- head o_{-1} (x o_{-1} tail)
  //   + sum_j (-1)^j (x o_j head) o_{-2-j} tail
  int sign = koszul(alg_.gens[x.gen].odd, alg_.gens[head.gen].odd);
  FieldExpr inner = tail.is_vacuum() ? FieldExpr::term(Monomial::single(x.gen, x.der), RatFunc(1))
                                     : mono_nth_cached(Monomial::single(x.gen, x.der), tail, -1);
  FieldExpr out = RatFunc(sign) * nth_mono_expr(Monomial::single(head.gen, head.der), inner, -1);
  for (long j = 0; Rat(j) < bound; ++j) {
    FieldExpr t = letter_pair(x, head, j);
    if (t.is_zero()) continue;
    out.add_scaled(expr_nth(t, tail, -2 - j), RatFunc((j % 2) ? -1 : 1));
  }
  return out;
}

FieldExpr Engine::mono_nth(const Monomial& a, const Monomial& b, long n) const {
  DepthGuard guard;
  const Rat wa = alg_.weight(a), wb = alg_.weight(b);
  if (n >= 0 && Rat(n) >= wa + wb) return FieldExpr::zero();

  if (a.is_vacuum()) {
    // 1 is the identity for o_{-1}; d1 = 0 kills all other negative products
    if (n == -1) return FieldExpr::term(b, RatFunc(1));
    return FieldExpr::zero();
  }
  if (b.is_vacuum()) {
    if (n >= 0) return FieldExpr::zero();
    if (n == -1) return FieldExpr::term(a, RatFunc(1));
    long k = -1 - n;
    return RatFunc(Rat(1) / factorial(k)) * derivative(FieldExpr::term(a, RatFunc(1)), k);
  }

  if (n <= -2) {
    // R5: a o_{-1-k} b = (1/k!) :(d^k a) b:
    long k = -1 - n;
    FieldExpr da = derivative(FieldExpr::term(a, RatFunc(1)), k);
    return RatFunc(Rat(1) / factorial(k)) * expr_nth(da, b, -1);
  }

  if (a.size() == 1) {
    const Letter L = a.letters[0];
    if (n == -1) return insert_letter(L, b);
    // n >= 0
    if (L.der > 0) {
      if (n == 0) return FieldExpr::zero();
      return RatFunc(Rat(-n)) *
             mono_nth_cached(Monomial::single(L.gen, L.der - 1), b, n - 1);
    }
    if (b.size() == 1) return letter_pair(L, b.letters[0], n);
    // R3 against b = :head tail:
    const Letter head = b.letters[0];
    const Monomial tail = rest_of(b);
    int sign = koszul(alg_.gens[L.gen].odd, alg_.gens[head.gen].odd);
    FieldExpr out = RatFunc(sign) *
                    nth_mono_expr(Monomial::single(head.gen, head.der), mono_nth_cached(a, tail, n), -1);
    const Rat bound = alg_.gens[L.gen].weight + alg_.gens[head.gen].weight + head.der;
    for (long j = 0; j <= n && Rat(j) < bound; ++j) {
      FieldExpr t = letter_pair(L, head, j);
      if (t.is_zero()) continue;
      out.add_scaled(expr_nth(t, tail, n - 1 - j), RatFunc(binom(n, j)));
    }
    return out;
  }

  // a.size() >= 2, n >= -1: R4 with a = :L1 a2:
  const Letter L1 = a.letters[0];
  const Monomial a2 = rest_of(a);
  const Rat wL1 = alg_.gens[L1.gen].weight + L1.der;
  const Rat wa2 = wa - wL1;
  int sign = koszul(alg_.gens[L1.gen].odd, alg_.odd(a2));
  FieldExpr out;
  for (long j = 0; Rat(n + j) < wa2 + wb; ++j) {
    FieldExpr e = mono_nth_cached(a2, b, n + j);
    if (e.is_zero()) continue;
    out += nth_mono_expr(Monomial::single(L1.gen, L1.der), e, -1 - j);
  }
  for (long j = 0; Rat(j) < wL1 + wb; ++j) {
    FieldExpr f = mono_nth_cached(Monomial::single(L1.gen, L1.der), b, j);
    if (f.is_zero()) continue;
    out.add_scaled(nth_mono_expr(a2, f, n - 1 - j), RatFunc(sign));
  }
  return out;
}

FieldExpr Engine::nth_via_skew(const FieldExpr& a, const FieldExpr& b, long n) const {
  // R2: b o_n a = (-1)^{|a||b|} sum_j (-1)^{n+j+1} (1/j!) d^j (a o_{n+j} b)
  bool oa = false, ob = false;
  if (!a.is_zero()) oa = alg_.odd(a.terms().begin()->first);
  if (!b.is_zero()) ob = alg_.odd(b.terms().begin()->first);
  auto wa = alg_.homogeneous_weight(a), wb = alg_.homogeneous_weight(b);
  if (!wa || !wb) throw std::invalid_argument("skew transform needs weight-homogeneous arguments");
  FieldExpr out;
  for (long j = 0; Rat(n + j) < *wa + *wb; ++j) {
    FieldExpr t = nth(a, b, n + j);
    if (t.is_zero()) continue;
    Rat c = Rat(((n + j + 1) % 2 == 0) ? 1 : -1) / factorial(j);
    out.add_scaled(derivative(t, j), RatFunc(c * koszul(oa, ob)));
  }
  return out;
}

std::string Engine::check_consistency() const {
  const int ng = static_cast<int>(alg_.gens.size());
  // skew-symmetry of the stored table on all generator pairs
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y) {
      Rat bound = alg_.gens[x].weight + alg_.gens[y].weight;
      for (long n = 0; Rat(n) < bound; ++n) {
        FieldExpr direct = nth(gen_field(y), gen_field(x), n);
        FieldExpr via = nth_via_skew(gen_field(x), gen_field(y), n);
        if (!(direct == via))
          return "skew-symmetry fails for " + alg_.gens[y].name + " o_" + std::to_string(n) + " " +
                 alg_.gens[x].name;
      }
    }
  // commutator identity on all generator triples
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y)
      for (int z = 0; z < ng; ++z) {
        FieldExpr a = gen_field(x), b = gen_field(y), c = gen_field(z);
        int sign = koszul(alg_.gens[x].odd, alg_.gens[y].odd);
        Rat bound = alg_.gens[x].weight + alg_.gens[y].weight + alg_.gens[z].weight;
        for (long m = 0; Rat(m) < bound; ++m)
          for (long n = 0; Rat(n) < bound; ++n) {
            FieldExpr lhs = nth(a, nth(b, c, n), m) - RatFunc(sign) * nth(b, nth(a, c, m), n);
            FieldExpr rhs;
            for (long j = 0; j <= m; ++j) {
              FieldExpr t = nth(a, b, j);
              if (t.is_zero()) continue;
              rhs.add_scaled(nth(t, c, m + n - j), RatFunc(binom(m, j)));
            }
            if (!(lhs == rhs))
              return "commutator identity fails for (" + alg_.gens[x].name + "," + alg_.gens[y].name +
                     "," + alg_.gens[z].name + ") at m=" + std::to_string(m) + " n=" + std::to_string(n);
          }
      }
  return {};
}

// --- cache serialization ----------------------------------------------------

namespace {

void write_mono(std::ostream& os, const Monomial& m) {
  if (m.is_vacuum()) {
    os << "1";
    return;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    os << m.letters[i].gen << "." << m.letters[i].der;
  }
}

bool read_mono(const std::string& s, Monomial& m) {
  m.letters.clear();
  if (s == "1") return true;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t dot = s.find('.', pos);
    std::size_t comma = s.find(',', pos);
    if (dot == std::string::npos) return false;
    try {
      Letter L;
      L.gen = static_cast<std::uint16_t>(std::stoul(s.substr(pos, dot - pos)));
      std::size_t end = (comma == std::string::npos) ? s.size() : comma;
      L.der = static_cast<std::uint16_t>(std::stoul(s.substr(dot + 1, end - dot - 1)));
      m.letters.push_back(L);
      pos = (comma == std::string::npos) ? s.size() : comma + 1;
    } catch (...) {
      return false;
    }
  }
  return true;
}

void write_expr(std::ostream& os, const FieldExpr& e) {
  os << e.size();
  for (const auto& [m, c] : e.terms()) {
    os << " ";
    write_mono(os, m);
    std::string cs = ratfunc_str(c);
    cs.erase(std::remove(cs.begin(), cs.end(), ' '), cs.end());
    os << " " << cs;
  }
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string Engine::algebra_fingerprint(const Algebra& alg) {
  std::ostringstream os;
  os << alg.name << ";";
  for (const auto& g : alg.gens)
    os << g.name << "," << rat_str(g.weight) << "," << (g.odd ? "o" : "e") << ","
       << rat_str(g.charge) << "," << (g.filtered ? "f" : "-") << ";";
  for (const auto& [key, e] : alg.table) {
    os << std::get<0>(key) << ":" << std::get<1>(key) << ":" << std::get<2>(key) << "=";
    write_expr(os, e);
    os << ";";
  }
  std::ostringstream hex;
  hex << std::hex << fnv1a(os.str());
  return hex.str();
}

std::size_t Engine::cache_size() const {
  std::shared_lock lk(mu_);
  return cache_.size();
}

void Engine::save_cache(std::ostream& os) const {
  std::shared_lock lk(mu_);
  os << "vxacache 1 " << algebra_fingerprint(alg_) << "\n";
  os << cache_.size() << "\n";
  for (const auto& [key, e] : cache_) {
    // decode the binary key back into (a, b, n)
    long biased = static_cast<unsigned char>(key[0]) | (static_cast<unsigned char>(key[1]) << 8) |
                  (static_cast<unsigned char>(key[2]) << 16);
    std::size_t alen = static_cast<unsigned char>(key[3]);
    Monomial a, b;
    std::size_t off = 4;
    auto decode = [&](Monomial& m, std::size_t count) {
      for (std::size_t i = 0; i < count; ++i) {
        Letter L;
        L.gen = static_cast<std::uint16_t>(static_cast<unsigned char>(key[off]) |
                                           (static_cast<unsigned char>(key[off + 1]) << 8));
        L.der = static_cast<std::uint16_t>(static_cast<unsigned char>(key[off + 2]) |
                                           (static_cast<unsigned char>(key[off + 3]) << 8));
        m.letters.push_back(L);
        off += 4;
      }
    };
    decode(a, alen);
    decode(b, (key.size() - off) / 4);
    os << (biased - 1000000) << " ";
    write_mono(os, a);
    os << " ";
    write_mono(os, b);
    os << " ";
    write_expr(os, e);
    os << "\n";
  }
}

void Engine::load_cache(std::istream& is) {
  std::string magic;
  int version = 0;
  std::string fp;
  if (!(is >> magic >> version >> fp)) return;
  if (magic != "vxacache" || version != 1 || fp != algebra_fingerprint(alg_)) return;
  std::size_t count = 0;
  if (!(is >> count)) return;
  std::unordered_map<std::string, FieldExpr> loaded;
  auto valid = [&](const Monomial& m) {
    for (const auto& L : m.letters)
      if (L.gen >= alg_.gens.size()) return false;
    return true;
  };
  for (std::size_t i = 0; i < count; ++i) {
    long n;
    std::string sa, sb;
    std::size_t nterms;
    if (!(is >> n >> sa >> sb >> nterms)) return;
    Monomial a, b;
    if (!read_mono(sa, a) || !read_mono(sb, b)) return;
    if (!valid(a) || !valid(b)) return;
    FieldExpr e;
    for (std::size_t t = 0; t < nterms; ++t) {
      std::string sm, sc;
      if (!(is >> sm >> sc)) return;
      Monomial m;
      if (!read_mono(sm, m) || !valid(m)) return;
      try {
        e.add(m, parse_ratfunc(sc));
      } catch (...) {
        return;
      }
    }
    loaded.emplace(product_key(a, b, n), std::move(e));
  }
  std::unique_lock lk(mu_);
  for (auto& [k, v] : loaded) cache_.emplace(std::move(k), std::move(v));
}

}  // namespace vxa
