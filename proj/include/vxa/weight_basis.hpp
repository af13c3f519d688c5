#pragma once

#include <optional>

#include "vxa/algebra.hpp"

namespace vxa {

// Complete, duplicate-free list of normal monomials of the given weight and
// charge (and filtration degree <= max_degree when given), deterministically
// ordered by display order.
std::vector<Monomial> weight_basis(const Algebra& alg, const Rat& weight, const Rat& charge,
                                   std::optional<long> max_degree = std::nullopt);

}  // namespace vxa
