#include "qapeda/count_tables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qapeda {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(const std::vector<double>& xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double sum = 0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

CountTables build_count_tables(std::size_t n) {
  if (n < 1 || n > kMaxCountTableSize)
    throw std::invalid_argument("build_count_tables: n out of range [1, 512]");

  CountTables t;
  t.n = n;
  t.log_factorial.resize(n + 1);
  t.log_derangements.resize(n + 1);
  t.log_at_distance.resize(n + 1);

  t.log_factorial[0] = 0;
  for (std::size_t k = 1; k <= n; ++k)
    t.log_factorial[k] = t.log_factorial[k - 1] + std::log(static_cast<double>(k));

  // D(0)=1, D(1)=0, D(k) = (k-1) * (D(k-1) + D(k-2)) carried in log space.
  t.log_derangements[0] = 0;
  if (n >= 1) t.log_derangements[1] = kNegInf;
  for (std::size_t k = 2; k <= n; ++k)
    t.log_derangements[k] = std::log(static_cast<double>(k - 1)) +
                            log_add_exp(t.log_derangements[k - 1], t.log_derangements[k - 2]);

  // log S(n,k) = log C(n,k) + log D(k); C(n,k) from the factorial sums.
  for (std::size_t k = 0; k <= n; ++k) {
    double log_choose = t.log_factorial[n] - t.log_factorial[k] - t.log_factorial[n - k];
    t.log_at_distance[k] = log_choose + t.log_derangements[k];
  }
  return t;
}

}  // namespace qapeda
