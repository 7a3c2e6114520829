#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qapeda/count_tables.hpp"
#include "qapeda/permutation.hpp"
#include "qapeda/rng.hpp"

namespace qapeda {

// Mallows model under the Hamming distance with spread theta >= 0:
//   p(sigma) = exp(-theta * d(sigma, center)) / psi(theta),
//   psi(theta) = sum_k S(n,k) * exp(-theta * k).
// The model factorizes through the distance: conditioned on d(sigma,center)=k
// every permutation in the class is equally likely, so sampling reduces to
// drawing k from the distance distribution below and then a uniform member.
//
// HammingMallows holds that distance distribution. With exclude_consensus the
// k = 0 class is removed and the rest renormalized, which is the form used
// when sampling around kernel centers (the center itself is never produced).
class HammingMallows {
 public:
  HammingMallows(std::size_t n, double theta, bool exclude_consensus);

  std::size_t n() const { return n_; }
  double theta() const { return theta_; }
  bool excludes_consensus() const { return exclude_consensus_; }

  // Normalizer over the full support, irrespective of exclude_consensus.
  double log_psi() const { return log_psi_; }

  // log p(K = k), k in [0, n]; log_pk()[1] is always -inf.
  const std::vector<double>& log_pk() const { return log_pk_; }
  double pk(std::size_t k) const;

  // Inverse-CDF draw of a distance.
  std::size_t sample_distance(Rng& rng) const;

  const CountTables& tables() const { return tables_; }

 private:
  std::size_t n_;
  double theta_;
  bool exclude_consensus_;
  double log_psi_;
  std::vector<double> log_pk_;
  std::vector<double> cdf_;
  CountTables tables_;
};

// Distance distribution of the Mallows model; throws on theta < 0, non-finite
// theta, or n outside [1, kMaxCountTableSize].
HammingMallows distance_pmf(std::size_t n, double theta, bool exclude_consensus);

// E[d(sigma, center)] under the full-support model. Strictly decreasing in
// theta, from n - 1 at theta = 0 toward 0.
double expected_distance(std::size_t n, double theta);

// Inverts expected_distance by bisection to |E - target| <= 1e-6. target must
// lie strictly inside (0, n-1); throws otherwise, or if bisection fails to
// reach the tolerance within its iteration cap.
double theta_from_expected_distance(std::size_t n, double target);

// A kernel density over permutations: uniform mixture of Mallows models, one
// centered on each member.
class KernelSet {
 public:
  explicit KernelSet(std::vector<Permutation> centers);

  std::size_t size() const { return centers_.size(); }
  std::size_t n() const { return centers_.front().size(); }
  const Permutation& center(std::size_t i) const { return centers_[i]; }

 private:
  std::vector<Permutation> centers_;
};

struct KmmDraw {
  Permutation sample;
  std::size_t center_index;
  std::size_t distance;
};

// One draw from the kernel mixture: pick a center uniformly, draw a distance
// k >= 2 from the consensus-excluded model, then a uniform permutation at
// distance k. The result never equals the chosen center. The model must have
// exclude_consensus set and match the kernels' size.
KmmDraw kmm_sample_traced(const KernelSet& kernels, const HammingMallows& model, Rng& rng);
Permutation kmm_sample(const KernelSet& kernels, const HammingMallows& model, Rng& rng);

// Exact Mallows probabilities for every permutation of size n <= 8, keyed by
// the permutation; intended as an oracle for distribution tests.
std::map<Permutation, double> mallows_pmf_exhaustive(const Permutation& center, double theta);

}  // namespace qapeda
