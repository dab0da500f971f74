#pragma once

#include <cstddef>
#include <vector>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Visits every vector of `parts` non-negative integers summing to `total`,
/// in lexicographic order. The visitor returns false to stop early; the
/// function returns false iff it was stopped.
template <typename Visitor>
bool for_each_composition(std::size_t parts, Count total, Visitor&& visit) {
  if (parts == 0) {
    if (total != 0) return true;
    std::vector<Count> empty;
    return visit(static_cast<const std::vector<Count>&>(empty));
  }
  std::vector<Count> current(parts, 0);
  // Recursive fill; the last part takes the remainder.
  auto fill = [&](auto&& self, std::size_t index, Count remaining) -> bool {
    if (index + 1 == parts) {
      current[index] = remaining;
      return visit(static_cast<const std::vector<Count>&>(current));
    }
    for (Count c = 0; c <= remaining; ++c) {
      current[index] = c;
      if (!self(self, index + 1, remaining - c)) return false;
    }
    current[index] = 0;
    return true;
  };
  return fill(fill, 0, total);
}

/// Binomial coefficient saturating at `cap + 1`.
inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::size_t>(r);
}

/// Number of compositions of `total` into `parts` parts, saturating at cap + 1.
inline std::size_t composition_count_capped(std::size_t parts, Count total, std::size_t cap) {
  if (parts == 0) return total == 0 ? 1 : 0;
  return binomial_capped(parts - 1 + static_cast<std::size_t>(total), parts - 1, cap);
}

}  // namespace chipfire
