#pragma once

#include <cstdint>
#include <vector>

#include "qapeda/permutation.hpp"
#include "qapeda/rng.hpp"

namespace qapeda {

// Uniform random derangement of {0, ..., k-1} by rejection: shuffle until no
// fixed point remains. Acceptance probability D(k)/k! tends to 1/e, so the
// expected number of attempts is about e regardless of k.
// k = 0 yields the empty vector; k = 1 throws (no derangement exists).
std::vector<std::int32_t> uniform_derangement(std::size_t k, Rng& rng);

// Uniform random permutation at Hamming distance exactly k from center.
// Valid k: 0 or 2..n; k = 1 and k > n throw. Chooses the k displaced
// positions uniformly, then applies a uniform derangement to the values they
// carry, which makes every one of the S(n,k) candidates equally likely.
Permutation sample_at_distance(const Permutation& center, std::size_t k, Rng& rng);

}  // namespace qapeda
