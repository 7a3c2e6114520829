#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qapeda/rng.hpp"

namespace qapeda {

bool is_permutation_vector(const std::vector<std::int32_t>& values);

// A permutation of {0, ..., n-1}, stored as the image vector.
class Permutation {
 public:
  Permutation() = default;

  // Validating constructor; throws std::invalid_argument unless values is a
  // bijection on {0, ..., n-1}.
  explicit Permutation(std::vector<std::int32_t> values);

  // Wraps values that are known to form a permutation (hot paths).
  static Permutation unchecked(std::vector<std::int32_t> values);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return values_.size(); }
  std::int32_t operator[](std::size_t i) const { return values_[i]; }
  const std::vector<std::int32_t>& values() const { return values_; }
  const std::int32_t* data() const { return values_.data(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<std::int32_t> values_;
};

// Uniform random permutation of size n (Fisher-Yates).
Permutation random_permutation(std::size_t n, Rng& rng);

// Number of positions where a and b disagree. Sizes must match.
// The value is never 1: permutations cannot differ in exactly one position.
std::size_t hamming_distance(const Permutation& a, const Permutation& b);

}  // namespace qapeda
