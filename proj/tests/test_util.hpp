#pragma once

#include <random>

#include "vxa/engine.hpp"

namespace vxa::testutil {

inline Rat random_rat(std::mt19937& rng, int mag = 6) {
  std::uniform_int_distribution<int> num(-mag, mag);
  std::uniform_int_distribution<int> den(1, mag);
  return rat(num(rng), den(rng));
}

inline Poly random_poly(std::mt19937& rng, int maxdeg = 3) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  int d = deg(rng);
  std::vector<Rat> c(d + 1);
  for (auto& x : c) x = random_rat(rng);
  return Poly(std::move(c));
}

inline RatFunc random_ratfunc(std::mt19937& rng, int maxdeg = 3) {
  Poly den;
  do {
    den = random_poly(rng, maxdeg);
  } while (den.is_zero());
  return RatFunc(random_poly(rng, maxdeg), den);
}

// Random normal monomial: normalize a random word and pick one of its terms.
inline Monomial random_monomial(std::mt19937& rng, const Engine& eng, int max_letters = 3,
                                int max_der = 2) {
  const auto& alg = eng.algebra();
  std::uniform_int_distribution<int> nl(0, max_letters);
  std::uniform_int_distribution<int> gd(0, static_cast<int>(alg.gens.size()) - 1);
  std::uniform_int_distribution<int> dd(0, max_der);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Letter> word;
    int k = nl(rng);
    for (int i = 0; i < k; ++i)
      word.push_back(Letter{static_cast<std::uint16_t>(gd(rng)), static_cast<std::uint16_t>(dd(rng))});
    FieldExpr e = eng.normalize_word(word);
    if (e.is_zero()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, e.size() - 1);
    auto it = e.terms().begin();
    std::advance(it, pick(rng));
    return it->first;
  }
  return Monomial::vacuum();
}

}  // namespace vxa::testutil
