#include "qapeda/eda.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "qapeda/mallows.hpp"
#include "qapeda/qap_kernels.hpp"
#include "qapeda/rng.hpp"
#include "qapeda/sampling.hpp"
#include "qapeda/schedule.hpp"

namespace qapeda {

namespace {

struct Individual {
  Permutation perm;
  Objective obj;
  std::uint64_t seq;  // creation order, breaks objective ties toward older
};

bool better(const Individual& a, const Individual& b) {
  return a.obj != b.obj ? a.obj < b.obj : a.seq < b.seq;
}

// Exact objective of sample, reached from a center with known objective by
// swapping mismatched positions one at a time; each swap is an O(n) delta.
// Walking the k mismatches costs O(k n) against O(n^2) for a full evaluation.
Objective evaluate_via_chain(const QapInstance& inst, const Permutation& center,
                             Objective center_obj, const Permutation& sample) {
  const std::size_t n = inst.n();
  std::vector<std::int32_t> cur(center.values());
  std::vector<std::int32_t> pos_of(n);
  for (std::size_t i = 0; i < n; ++i) pos_of[static_cast<std::size_t>(cur[i])] = static_cast<std::int32_t>(i);

  Objective f = center_obj;
  for (std::size_t i = 0; i < n; ++i) {
    while (cur[i] != sample[i]) {
      auto j = static_cast<std::size_t>(pos_of[static_cast<std::size_t>(sample[i])]);
      f += kernels::swap_delta(inst, cur.data(), i, j);
      std::swap(cur[i], cur[j]);
      pos_of[static_cast<std::size_t>(cur[i])] = static_cast<std::int32_t>(i);
      pos_of[static_cast<std::size_t>(cur[j])] = static_cast<std::int32_t>(j);
    }
  }
  return f;
}

}  // namespace

RunResult run(const QapInstance& inst, const EdaConfig& cfg) {
  const auto start_time = std::chrono::steady_clock::now();
  const std::size_t n = inst.n();

  if (cfg.population_size < 2 || cfg.population_size % 2 != 0)
    throw std::invalid_argument("eda: population_size must be even and >= 2");
  const std::uint64_t pop_size = cfg.population_size;
  const std::uint64_t half = pop_size / 2;

  std::uint64_t budget = cfg.eval_budget;
  if (budget == 0) budget = 1000 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  if (budget < pop_size)
    throw std::invalid_argument("eda: eval_budget cannot cover the initial population");
  const std::uint64_t t_max = (budget - pop_size) / half;
  if (t_max < 1)
    throw std::invalid_argument("eda: eval_budget leaves no room for an iteration");

  Schedule sched{cfg.ek_start_fraction * static_cast<double>(n), cfg.ek_end, cfg.gamma, t_max};
  validate_schedule(sched);

  Rng rng(cfg.seed);
  std::uint64_t next_seq = 0;

  std::vector<Individual> population;
  population.reserve(pop_size + half);
  for (std::uint64_t i = 0; i < pop_size; ++i) {
    Permutation p = random_permutation(n, rng);
    Objective obj = kernels::evaluate(inst, p.data());
    population.push_back({std::move(p), obj, next_seq++});
  }
  std::uint64_t evaluations = pop_size;
  std::sort(population.begin(), population.end(), better);

  RunResult result;
  result.trace.reserve(t_max);

  for (std::uint64_t t = 1; t <= t_max; ++t) {
    double target = cfg.schedule_kind == ScheduleKind::exponential
                        ? schedule_target(sched, t)
                        : schedule_target_linear(sched, t);
    double theta = theta_from_expected_distance(n, target);
    HammingMallows model(n, theta, true);

    const std::size_t center_count =
        cfg.kernel_mode == KernelMode::kernels ? static_cast<std::size_t>(half) : 1;
    std::vector<Permutation> centers;
    centers.reserve(center_count);
    std::vector<Objective> center_objs(center_count);
    for (std::size_t i = 0; i < center_count; ++i) {
      centers.push_back(population[i].perm);
      center_objs[i] = population[i].obj;
    }
    KernelSet kernels_set(std::move(centers));

    for (std::uint64_t s = 0; s < half; ++s) {
      KmmDraw draw = kmm_sample_traced(kernels_set, model, rng);
      Objective obj;
      if (cfg.eval_strategy == EvalStrategy::delta_chain && 4 * draw.distance < n) {
        obj = evaluate_via_chain(inst, kernels_set.center(draw.center_index),
                                 center_objs[draw.center_index], draw.sample);
      } else {
        obj = kernels::evaluate(inst, draw.sample.data());
      }
      population.push_back({std::move(draw.sample), obj, next_seq++});
    }
    evaluations += half;

    std::sort(population.begin(), population.end(), better);
    population.resize(pop_size);

    double mean = 0;
    for (const Individual& ind : population) mean += static_cast<double>(ind.obj);
    mean /= static_cast<double>(pop_size);
    result.trace.push_back({t, target, theta, population.front().obj, mean});
  }

  result.best_permutation = population.front().perm;
  result.best_objective = population.front().obj;
  result.evaluations_used = evaluations;
  result.iterations = t_max;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

}  // namespace qapeda
