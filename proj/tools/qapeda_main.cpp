#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qapeda/bench.hpp"
#include "qapeda/eda.hpp"
#include "qapeda/mallows.hpp"
#include "qapeda/qap.hpp"

namespace fs = std::filesystem;
using namespace qapeda;

namespace {

struct EdaFlags {
  std::uint64_t pop = 972;
  double gamma = 5.14;
  double ek_start_frac = 0.5;
  double ek_end = 0.25;
  std::uint64_t budget_multiplier = 1000;
  std::string schedule = "exp";
  std::string kernel_mode = "kernels";
  std::string eval_strategy = "full";
};

void add_eda_flags(CLI::App* cmd, EdaFlags& f) {
  cmd->add_option("--pop", f.pop, "population size (even)")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "schedule decay rate")->capture_default_str();
  cmd->add_option("--ek-start-frac", f.ek_start_frac,
                  "initial expected sampling distance as a fraction of n")
      ->capture_default_str();
  cmd->add_option("--ek-end", f.ek_end, "final expected sampling distance")
      ->capture_default_str();
  cmd->add_option("--budget-multiplier", f.budget_multiplier,
                  "evaluation budget = multiplier * n^2")
      ->capture_default_str();
  cmd->add_option("--schedule", f.schedule, "target decay shape")
      ->check(CLI::IsMember({"exp", "linear"}))
      ->capture_default_str();
  cmd->add_option("--kernel-mode", f.kernel_mode, "kernel centers per iteration")
      ->check(CLI::IsMember({"kernels", "best-only"}))
      ->capture_default_str();
  cmd->add_option("--eval-strategy", f.eval_strategy, "objective evaluation path")
      ->check(CLI::IsMember({"full", "delta"}))
      ->capture_default_str();
}

EdaConfig to_eda_config(const EdaFlags& f) {
  EdaConfig cfg;
  cfg.population_size = f.pop;
  cfg.gamma = f.gamma;
  cfg.ek_start_fraction = f.ek_start_frac;
  cfg.ek_end = f.ek_end;
  cfg.schedule_kind = f.schedule == "exp" ? ScheduleKind::exponential : ScheduleKind::linear;
  cfg.kernel_mode = f.kernel_mode == "kernels" ? KernelMode::kernels : KernelMode::best_only;
  cfg.eval_strategy = f.eval_strategy == "full" ? EvalStrategy::full : EvalStrategy::delta_chain;
  return cfg;
}

int cmd_solve(const std::string& instance_path, std::uint64_t seed, const EdaFlags& flags,
              std::optional<std::string> out_path) {
  QapInstance inst = load_instance_file(instance_path);
  EdaConfig cfg = to_eda_config(flags);
  cfg.seed = seed;
  cfg.eval_budget = flags.budget_multiplier * static_cast<std::uint64_t>(inst.n()) *
                    static_cast<std::uint64_t>(inst.n());

  RunResult result = run(inst, cfg);

  fs::path out = out_path ? fs::path(*out_path) : fs::path(inst.name() + ".sln");
  write_solution_file(out, result.best_permutation, result.best_objective);

  std::printf("%s objective=%lld evaluations=%llu seconds=%.3f\n", inst.name().c_str(),
              static_cast<long long>(result.best_objective),
              static_cast<unsigned long long>(result.evaluations_used), result.wall_seconds);
  return 0;
}

int cmd_bench(const std::string& dir, const std::string& registry_path, std::uint64_t reps,
              std::uint64_t base_seed, unsigned workers, const EdaFlags& flags,
              std::optional<std::string> out_path, std::optional<std::string> json_path) {
  BestKnownRegistry registry = BestKnownRegistry::load_csv(registry_path);
  BenchConfig cfg;
  cfg.eda = to_eda_config(flags);
  cfg.budget_multiplier = flags.budget_multiplier;
  cfg.repetitions = reps;
  cfg.base_seed = base_seed;
  cfg.workers = workers;

  std::vector<BenchRow> rows = run_bench(dir, registry, cfg);

  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + *out_path);
    write_bench_csv(out, rows);
  } else {
    write_bench_csv(std::cout, rows);
  }
  if (json_path) {
    std::ofstream out(*json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + *json_path);
    write_bench_json(out, rows, cfg);
  }
  return 0;
}

int cmd_pmf(std::size_t n, std::optional<double> theta, std::optional<double> ek, bool exclude,
            std::optional<std::string> out_path) {
  if (theta.has_value() == ek.has_value())
    throw std::invalid_argument("pmf: give exactly one of --theta and --ek");

  double resolved = theta ? *theta : theta_from_expected_distance(n, *ek);
  HammingMallows model = distance_pmf(n, resolved, exclude);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (out_path) {
    file.open(*out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + *out_path);
    os = &file;
  }
  if (ek) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", resolved);
    *os << "# theta=" << buf << "\n";
  }
  *os << "k,p\n";
  for (std::size_t k = 0; k <= n; ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", model.pk(k));
    *os << k << ',' << buf << '\n';
  }
  return 0;
}

int cmd_eval(const std::string& instance_path, const std::string& solution_path) {
  QapInstance inst = load_instance_file(instance_path);
  SolutionFile sol = read_solution_file(solution_path, inst.n());
  Objective obj = evaluate(inst, sol.sigma);
  std::printf("%lld\n", static_cast<long long>(obj));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel Mallows EDA for the quadratic assignment problem"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run the EDA on one instance");
  std::string solve_instance;
  std::uint64_t solve_seed = 0;
  std::optional<std::string> solve_out;
  EdaFlags solve_flags;
  solve->add_option("instance", solve_instance, "QAPLIB instance file")->required();
  solve->add_option("--seed", solve_seed, "RNG seed")->capture_default_str();
  solve->add_option("--out", solve_out, "solution file path (default: <name>.sln)");
  add_eda_flags(solve, solve_flags);

  // bench
  auto* bench = app.add_subcommand("bench", "ARDP benchmark over an instance directory");
  std::string bench_dir, bench_registry;
  std::uint64_t bench_reps = 10, bench_seed = 1;
  unsigned bench_workers = 1;
  std::optional<std::string> bench_out, bench_json;
  EdaFlags bench_flags;
  bench->add_option("dir", bench_dir, "directory of .dat instances")->required();
  bench->add_option("--registry", bench_registry, "best-known CSV (name,value)")->required();
  bench->add_option("--reps", bench_reps, "repetitions per instance")->capture_default_str();
  bench->add_option("--seed", bench_seed, "base seed; rep r uses seed base+r")
      ->capture_default_str();
  bench->add_option("--workers", bench_workers, "worker threads")->capture_default_str();
  bench->add_option("--out", bench_out, "write the CSV here instead of stdout");
  bench->add_option("--json", bench_json, "also write a JSON report here");
  add_eda_flags(bench, bench_flags);

  // pmf
  auto* pmf = app.add_subcommand("pmf", "distance distribution of the Mallows model");
  std::size_t pmf_n = 0;
  std::optional<double> pmf_theta, pmf_ek;
  bool pmf_exclude = false;
  std::optional<std::string> pmf_out;
  pmf->add_option("--n", pmf_n, "permutation size")->required();
  pmf->add_option("--theta", pmf_theta, "spread parameter");
  pmf->add_option("--ek", pmf_ek, "expected distance; theta is solved for");
  pmf->add_flag("--exclude", pmf_exclude, "drop the distance-0 class and renormalize");
  pmf->add_option("--out", pmf_out, "write CSV here instead of stdout");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "recompute the objective of a solution file");
  std::string eval_instance, eval_solution;
  eval_cmd->add_option("instance", eval_instance, "QAPLIB instance file")->required();
  eval_cmd->add_option("solution", eval_solution, "solution file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(solve_instance, solve_seed, solve_flags, solve_out);
    if (bench->parsed())
      return cmd_bench(bench_dir, bench_registry, bench_reps, bench_seed, bench_workers,
                       bench_flags, bench_out, bench_json);
    if (pmf->parsed()) return cmd_pmf(pmf_n, pmf_theta, pmf_ek, pmf_exclude, pmf_out);
    if (eval_cmd->parsed()) return cmd_eval(eval_instance, eval_solution);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
