#pragma once

// Deterministic generators for fuzzed instances and permutations.

#include <cstdint>
#include <string>
#include <vector>

#include "qapeda/qap.hpp"
#include "qapeda/rng.hpp"

namespace fuzz {

// Random instance with independently drawn (hence asymmetric) matrices.
inline qapeda::QapInstance random_instance(qapeda::Rng& rng, std::size_t n,
                                           std::int64_t max_entry,
                                           std::string name = "fuzz") {
  std::vector<std::int64_t> dist(n * n), flow(n * n);
  for (auto& v : dist) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_entry) + 1));
  for (auto& v : flow) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_entry) + 1));
  return qapeda::QapInstance(std::move(name), n, std::move(dist), std::move(flow));
}

}  // namespace fuzz
