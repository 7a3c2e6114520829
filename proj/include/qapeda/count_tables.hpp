#pragma once

#include <cstddef>
#include <vector>

namespace qapeda {

// log(exp(a) + exp(b)) with -inf treated as an exact zero summand.
double log_add_exp(double a, double b);

// log sum exp over a vector; returns -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& xs);

inline constexpr std::size_t kMaxCountTableSize = 512;

// Log-space counting tables for permutations of size n under the Hamming
// distance. All counts that are zero are stored as -infinity.
struct CountTables {
  std::size_t n = 0;
  std::vector<double> log_factorial;    // log_factorial[k] = log(k!), k in [0, n]
  std::vector<double> log_derangements; // log D(k); D(0)=1, D(1)=0
  std::vector<double> log_at_distance;  // log S(n,k) = log(C(n,k) * D(k))
};

// Builds the tables for 1 <= n <= kMaxCountTableSize; throws otherwise.
// S(n,k) counts permutations at Hamming distance exactly k from a fixed
// center: choose the k displaced positions, then derange them.
CountTables build_count_tables(std::size_t n);

}  // namespace qapeda
