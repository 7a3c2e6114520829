#include "qapeda/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qapeda/sampling.hpp"

namespace qapeda {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// E[K] under the full-support distance distribution, reusing prebuilt tables.
double expected_distance_with_tables(const CountTables& t, double theta) {
  const std::size_t n = t.n;
  std::vector<double> log_w(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    log_w[k] = t.log_at_distance[k] - theta * static_cast<double>(k);
  double log_psi = log_sum_exp(log_w);
  double mean = 0;
  for (std::size_t k = 1; k <= n; ++k)
    mean += static_cast<double>(k) * std::exp(log_w[k] - log_psi);
  return mean;
}
}  // namespace

HammingMallows::HammingMallows(std::size_t n, double theta, bool exclude_consensus)
    : n_(n), theta_(theta), exclude_consensus_(exclude_consensus),
      tables_(build_count_tables(n)) {
  if (!std::isfinite(theta) || theta < 0)
    throw std::invalid_argument("HammingMallows: theta must be finite and >= 0");
  if (exclude_consensus_ && n < 2)
    throw std::invalid_argument("HammingMallows: exclusion needs n >= 2");

  std::vector<double> log_w(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    log_w[k] = tables_.log_at_distance[k] - theta * static_cast<double>(k);
  log_psi_ = log_sum_exp(log_w);

  if (exclude_consensus_) log_w[0] = kNegInf;
  double log_z = exclude_consensus_ ? log_sum_exp(log_w) : log_psi_;
  log_pk_.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    log_pk_[k] = log_w[k] == kNegInf ? kNegInf : log_w[k] - log_z;

  cdf_.resize(n + 1);
  double acc = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    acc += std::exp(log_pk_[k]);
    cdf_[k] = acc;
  }
  cdf_[n] = 1.0;  // guard against roundoff at the top
}

double HammingMallows::pk(std::size_t k) const {
  return k < log_pk_.size() ? std::exp(log_pk_[k]) : 0.0;
}

std::size_t HammingMallows::sample_distance(Rng& rng) const {
  double u = rng.unit();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::size_t>(it - cdf_.begin());
}

HammingMallows distance_pmf(std::size_t n, double theta, bool exclude_consensus) {
  return HammingMallows(n, theta, exclude_consensus);
}

double expected_distance(std::size_t n, double theta) {
  if (!std::isfinite(theta) || theta < 0)
    throw std::invalid_argument("expected_distance: theta must be finite and >= 0");
  return expected_distance_with_tables(build_count_tables(n), theta);
}

double theta_from_expected_distance(std::size_t n, double target) {
  if (n < 2) throw std::invalid_argument("theta_from_expected_distance: n must be >= 2");
  const double upper = static_cast<double>(n) - 1.0;
  if (!std::isfinite(target) || target <= 0 || target >= upper)
    throw std::invalid_argument("theta_from_expected_distance: target must be in (0, n-1)");

  const CountTables tables = build_count_tables(n);
  constexpr double kTol = 1e-6;
  constexpr int kMaxIter = 200;

  // E is strictly decreasing in theta with E(0) = n-1, so bracket by
  // doubling, then bisect.
  double lo = 0;
  double hi = 1;
  int doublings = 0;
  while (expected_distance_with_tables(tables, hi) > target) {
    lo = hi;
    hi *= 2;
    if (++doublings > 120)
      throw std::runtime_error("theta_from_expected_distance: failed to bracket target");
  }
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double mid = 0.5 * (lo + hi);
    double e = expected_distance_with_tables(tables, mid);
    if (std::abs(e - target) <= kTol) return mid;
    (e > target ? lo : hi) = mid;
  }
  throw std::runtime_error("theta_from_expected_distance: bisection did not converge");
}

KernelSet::KernelSet(std::vector<Permutation> centers) : centers_(std::move(centers)) {
  if (centers_.empty()) throw std::invalid_argument("KernelSet: needs at least one center");
  const std::size_t n = centers_.front().size();
  for (const Permutation& c : centers_)
    if (c.size() != n) throw std::invalid_argument("KernelSet: centers differ in size");
}

KmmDraw kmm_sample_traced(const KernelSet& kernels, const HammingMallows& model, Rng& rng) {
  if (!model.excludes_consensus())
    throw std::invalid_argument("kmm_sample: model must exclude the consensus class");
  if (model.n() != kernels.n())
    throw std::invalid_argument("kmm_sample: model size does not match kernels");
  std::size_t c = static_cast<std::size_t>(rng.below(kernels.size()));
  std::size_t k = model.sample_distance(rng);
  Permutation sample = sample_at_distance(kernels.center(c), k, rng);
  return {std::move(sample), c, k};
}

Permutation kmm_sample(const KernelSet& kernels, const HammingMallows& model, Rng& rng) {
  return kmm_sample_traced(kernels, model, rng).sample;
}

std::map<Permutation, double> mallows_pmf_exhaustive(const Permutation& center, double theta) {
  const std::size_t n = center.size();
  if (n > 8) throw std::invalid_argument("mallows_pmf_exhaustive: n must be <= 8");
  if (!std::isfinite(theta) || theta < 0)
    throw std::invalid_argument("mallows_pmf_exhaustive: theta must be finite and >= 0");

  const CountTables tables = build_count_tables(n);
  std::vector<double> log_w(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    log_w[k] = tables.log_at_distance[k] - theta * static_cast<double>(k);
  const double log_psi = log_sum_exp(log_w);

  std::map<Permutation, double> pmf;
  std::vector<std::int32_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int32_t>(i);
  do {
    Permutation p = Permutation::unchecked(v);
    double d = static_cast<double>(hamming_distance(p, center));
    pmf.emplace(std::move(p), std::exp(-theta * d - log_psi));
  } while (std::next_permutation(v.begin(), v.end()));
  return pmf;
}

}  // namespace qapeda
