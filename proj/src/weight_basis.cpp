#include "vxa/weight_basis.hpp"

#include <algorithm>

namespace vxa {

namespace {

struct Enumerator {
  const Algebra& alg;
  Rat target_charge;
  std::optional<long> max_degree;
  std::vector<Letter> current;
  long degree = 0;
  std::vector<Monomial> out;

  // Extend with letters of generator g (derivative orders bounded by max_der,
  // non-increasing; strictly decreasing for odd generators), then move on.
  void letters_of_gen(std::size_t g, long max_der, const Rat& remaining) {
    next_gen(g + 1, remaining);
    const GeneratorInfo& info = alg.gens[g];
    if (max_degree && info.filtered && degree >= *max_degree) return;
    Rat avail = remaining - info.weight;
    if (avail < 0) return;
    long top = std::min<long>(max_der, static_cast<long>(rat_floor(avail).get_si()));
    for (long d = top; d >= 0; --d) {
      current.push_back(Letter{static_cast<std::uint16_t>(g), static_cast<std::uint16_t>(d)});
      if (info.filtered) ++degree;
      letters_of_gen(g, info.odd ? d - 1 : d, remaining - info.weight - d);
      if (info.filtered) --degree;
      current.pop_back();
    }
  }

  void next_gen(std::size_t g, const Rat& remaining) {
    if (g == alg.gens.size()) {
      if (remaining == 0) {
        Monomial m(current);
        if (alg.charge(m) == target_charge) out.push_back(std::move(m));
      }
      return;
    }
    letters_of_gen(g, remaining == 0 ? -1 : 1 << 14, remaining);
  }
};

}  // namespace

std::vector<Monomial> weight_basis(const Algebra& alg, const Rat& weight, const Rat& charge,
                                   std::optional<long> max_degree) {
  if (weight < 0) return {};
  Enumerator e{alg, charge, max_degree, {}, 0, {}};
  e.next_gen(0, weight);
  std::sort(e.out.begin(), e.out.end(),
            [&](const Monomial& a, const Monomial& b) { return display_less(alg, a, b); });
  return e.out;
}

}  // namespace vxa
