#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qapeda {

// Target expected sampling distance as a function of iteration t in
// [0, t_max]: starts at ek_start, decreases strictly, ends at ek_end.
struct Schedule {
  double ek_start = 0;
  double ek_end = 0;
  double gamma = 0;
  std::uint64_t t_max = 0;
};

inline void validate_schedule(const Schedule& s) {
  if (!(s.ek_start > s.ek_end) || !(s.ek_end > 0))
    throw std::invalid_argument("schedule: need ek_start > ek_end > 0");
  if (!(s.gamma > 0) || !std::isfinite(s.gamma))
    throw std::invalid_argument("schedule: gamma must be positive and finite");
  if (s.t_max < 1) throw std::invalid_argument("schedule: t_max must be >= 1");
}

// Exponential decay: with progress p = t / t_max and
// delta(q) = (exp(-gamma q) - 1) / (exp(-gamma) - 1), the target is
// ek_end + delta(1 - p) * (ek_start - ek_end). delta(1) = 1 and delta(0) = 0,
// so the endpoints are returned exactly.
inline double schedule_target(const Schedule& s, std::uint64_t t) {
  validate_schedule(s);
  if (t > s.t_max) throw std::invalid_argument("schedule: t out of range");
  if (t == 0) return s.ek_start;
  if (t == s.t_max) return s.ek_end;
  double p = static_cast<double>(t) / static_cast<double>(s.t_max);
  double delta = std::expm1(-s.gamma * (1.0 - p)) / std::expm1(-s.gamma);
  return s.ek_end + delta * (s.ek_start - s.ek_end);
}

// Linear decay between the same endpoints (ablation variant).
inline double schedule_target_linear(const Schedule& s, std::uint64_t t) {
  validate_schedule(s);
  if (t > s.t_max) throw std::invalid_argument("schedule: t out of range");
  if (t == 0) return s.ek_start;
  if (t == s.t_max) return s.ek_end;
  double p = static_cast<double>(t) / static_cast<double>(s.t_max);
  return s.ek_start + p * (s.ek_end - s.ek_start);
}

}  // namespace qapeda
