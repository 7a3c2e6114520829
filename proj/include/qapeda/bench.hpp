#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qapeda/eda.hpp"
#include "qapeda/qap.hpp"

namespace qapeda {

// Best-known objective values, loaded from a two-column CSV "name,value".
// A first line whose value column is not a number is treated as a header.
class BestKnownRegistry {
 public:
  static BestKnownRegistry load_csv(const std::filesystem::path& path);
  static BestKnownRegistry from_map(std::map<std::string, Objective> values);

  bool contains(const std::string& name) const { return values_.count(name) != 0; }
  Objective at(const std::string& name) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::string, Objective> values_;
};

struct BenchConfig {
  EdaConfig eda;                        // eda.seed is ignored; seeds come from base_seed
  std::uint64_t budget_multiplier = 1000;  // per-instance budget = multiplier * n^2
  std::uint64_t repetitions = 10;
  std::uint64_t base_seed = 1;
  unsigned workers = 1;
};

struct BenchRow {
  std::string instance;
  std::size_t n;
  std::uint64_t reps;
  double mean_objective;
  Objective best_objective;
  double ardp_percent;
  double mean_seconds;
  std::uint64_t evals_per_run;
};

// Runs the EDA repetitions times per instance with seeds base_seed ..
// base_seed + reps - 1 and aggregates. Instances are the *.dat files of dir,
// one row per instance sorted by name. Every instance must appear in the
// registry. Worker threads only change scheduling, never results.
std::vector<BenchRow> run_bench(const std::filesystem::path& dir,
                                const BestKnownRegistry& registry,
                                const BenchConfig& cfg);

// Fixed column order and formatting so identical runs produce identical bytes.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows,
                      const BenchConfig& cfg);

// Solution file format: first line n, second line the permutation as 1-based
// location assignments, third line the objective value.
void write_solution_file(const std::filesystem::path& path, const Permutation& sigma,
                         Objective objective);

struct SolutionFile {
  Permutation sigma;
  std::optional<Objective> objective;  // present when the file carries one
};

// Parses and validates a solution file against an instance size; throws with
// "not a permutation" when the assignment is not bijective.
SolutionFile read_solution_file(const std::filesystem::path& path, std::size_t n);

QapInstance load_instance_file(const std::filesystem::path& path);

}  // namespace qapeda
