#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qapeda/permutation.hpp"

namespace qapeda {

using Objective = std::int64_t;

// A QAP instance: n locations with pairwise distances, n facilities with
// pairwise flows, both row-major n x n with non-negative entries. A solution
// sigma assigns facility sigma(i) to location i and costs
//   f(sigma) = sum_ij distance[i][j] * flow[sigma(i)][sigma(j)].
// The caller must ensure n^2 * max(distance) * max(flow) fits in int64.
class QapInstance {
 public:
  QapInstance(std::string name, std::size_t n,
              std::vector<std::int64_t> distance, std::vector<std::int64_t> flow);

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  std::int64_t distance(std::size_t i, std::size_t j) const { return distance_[i * n_ + j]; }
  std::int64_t flow(std::size_t i, std::size_t j) const { return flow_[i * n_ + j]; }
  const std::vector<std::int64_t>& distance_data() const { return distance_; }
  const std::vector<std::int64_t>& flow_data() const { return flow_; }

  // int32 mirrors (plus transposes) used by the vectorized kernels; present
  // only when every entry fits in int32.
  bool fits32() const { return fits32_; }
  const std::int32_t* distance32() const { return distance32_.data(); }
  const std::int32_t* flow32() const { return flow32_.data(); }
  const std::int32_t* distance32_t() const { return distance32_t_.data(); }
  const std::int32_t* flow32_t() const { return flow32_t_.data(); }

 private:
  std::string name_;
  std::size_t n_ = 0;
  std::vector<std::int64_t> distance_, flow_;
  std::vector<std::int32_t> distance32_, flow32_, distance32_t_, flow32_t_;
  bool fits32_ = false;
};

// Parses QAPLIB text: n, then n^2 distance entries, then n^2 flow entries,
// whitespace-separated. Throws std::invalid_argument on wrong token count,
// non-integer or negative entries, or n < 2.
QapInstance parse_qaplib(const std::string& text, std::string name);

// Inverse of parse_qaplib up to whitespace.
std::string serialize_qaplib(const QapInstance& inst);

// Exact objective value. sigma.size() must equal inst.n().
Objective evaluate(const QapInstance& inst, const Permutation& sigma);

// Exact objective after swapping sigma(i1) and sigma(i2), given the current
// objective f = evaluate(inst, sigma); O(n). Throws on i1 == i2 or indices
// out of range. Works for asymmetric distance and flow matrices: the 2x2
// block of terms with both indices in {i1, i2} is double-counted by the
// row/column sweeps and is corrected entry by entry.
Objective delta_swap(const QapInstance& inst, const Permutation& sigma, Objective f,
                     std::size_t i1, std::size_t i2);

// Average relative deviation percentage: 100 * |best_known - mean| / best_known
// where mean averages the per-run objectives. Throws if best_known <= 0 or
// objectives is empty.
double ardp(Objective best_known, const std::vector<Objective>& objectives);

}  // namespace qapeda
