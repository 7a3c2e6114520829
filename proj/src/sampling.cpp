#include "qapeda/sampling.hpp"

#include <numeric>
#include <stdexcept>

namespace qapeda {

std::vector<std::int32_t> uniform_derangement(std::size_t k, Rng& rng) {
  if (k == 0) return {};
  if (k == 1) throw std::invalid_argument("uniform_derangement: none exists for k = 1");
  std::vector<std::int32_t> d(k);
  for (;;) {
    std::iota(d.begin(), d.end(), 0);
    rng.shuffle(d);
    bool fixed_point = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (d[i] == static_cast<std::int32_t>(i)) {
        fixed_point = true;
        break;
      }
    }
    if (!fixed_point) return d;
  }
}

Permutation sample_at_distance(const Permutation& center, std::size_t k, Rng& rng) {
  const std::size_t n = center.size();
  if (k == 1 || k > n)
    throw std::invalid_argument("sample_at_distance: k must be 0 or in [2, n]");
  std::vector<std::int32_t> out(center.values());
  if (k == 0) return Permutation::unchecked(std::move(out));

  // First k entries of a partial Fisher-Yates pass: a uniform k-subset of
  // positions, in uniform order. The order doesn't matter; see below.
  std::vector<std::int32_t> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pos[i], pos[j]);
  }

  // Relocate the values at the chosen positions along a derangement, so each
  // chosen position changes and no other position does: distance exactly k.
  // Every permutation at distance k arises from exactly k! (ordering,
  // derangement) pairs, hence uniformly.
  std::vector<std::int32_t> d = uniform_derangement(k, rng);
  for (std::size_t i = 0; i < k; ++i)
    out[static_cast<std::size_t>(pos[i])] = center[static_cast<std::size_t>(pos[d[i]])];
  return Permutation::unchecked(std::move(out));
}

}  // namespace qapeda
