#pragma once

#include <cstdint>
#include <vector>

#include "qapeda/permutation.hpp"
#include "qapeda/qap.hpp"

namespace qapeda {

enum class ScheduleKind { exponential, linear };
enum class KernelMode { kernels, best_only };

// How sampled individuals are evaluated. Both are exact; delta_chain walks a
// transposition path from the chosen kernel center and applies O(n) swap
// deltas when the sampled distance is small enough to beat the O(n^2) full
// evaluation, and falls back to it otherwise.
enum class EvalStrategy { full, delta_chain };

struct EdaConfig {
  std::uint64_t population_size = 972;
  double gamma = 5.14;
  double ek_start_fraction = 0.5;  // initial target distance = fraction * n
  double ek_end = 0.25;
  std::uint64_t eval_budget = 0;   // 0 resolves to 1000 * n^2
  std::uint64_t seed = 0;
  ScheduleKind schedule_kind = ScheduleKind::exponential;
  KernelMode kernel_mode = KernelMode::kernels;
  EvalStrategy eval_strategy = EvalStrategy::full;
};

struct TraceRecord {
  std::uint64_t iteration;
  double target_ek;
  double theta;
  Objective best_objective;
  double mean_objective;
};

struct RunResult {
  Permutation best_permutation;
  Objective best_objective = 0;
  std::uint64_t evaluations_used = 0;
  std::uint64_t iterations = 0;
  double wall_seconds = 0;
  std::vector<TraceRecord> trace;
};

// Estimation of distribution algorithm for the QAP. Per iteration: the best
// half of the population becomes kernel centers (or just the single best in
// best_only mode), theta is set by inverting the scheduled target distance,
// half a population of offspring is drawn from the kernel mixture, and
// parents plus offspring are truncated back to population_size, preferring
// lower objective and then earlier creation. Runs exactly
// t_max = floor((budget - population_size) / (population_size / 2))
// iterations so the evaluation budget is never exceeded.
//
// Deterministic: the result is a pure function of (inst, cfg).
RunResult run(const QapInstance& inst, const EdaConfig& cfg);

}  // namespace qapeda
