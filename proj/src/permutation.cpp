#include "qapeda/permutation.hpp"

#include <numeric>

namespace qapeda {

bool is_permutation_vector(const std::vector<std::int32_t>& values) {
  const std::size_t n = values.size();
  std::vector<bool> seen(n, false);
  for (std::int32_t v : values) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<std::int32_t> values) : values_(std::move(values)) {
  if (!is_permutation_vector(values_))
    throw std::invalid_argument("Permutation: values are not a bijection on {0..n-1}");
}

Permutation Permutation::unchecked(std::vector<std::int32_t> values) {
  Permutation p;
  p.values_ = std::move(values);
  return p;
}

Permutation Permutation::identity(std::size_t n) {
  if (n < 1) throw std::invalid_argument("Permutation::identity: n must be >= 1");
  std::vector<std::int32_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return unchecked(std::move(v));
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_permutation: n must be >= 1");
  std::vector<std::int32_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(v);
  return Permutation::unchecked(std::move(v));
}

std::size_t hamming_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: size mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace qapeda
