#include "qapeda/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qapeda {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::int64_t> tokenize_ints(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    if (std::isspace(static_cast<unsigned char>(*p))) {
      ++p;
      continue;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || (ptr < end && !std::isspace(static_cast<unsigned char>(*ptr))))
      throw std::invalid_argument(what + ": non-integer token");
    out.push_back(v);
    p = ptr;
  }
  return out;
}

}  // namespace

BestKnownRegistry BestKnownRegistry::load_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry " + path.string());

  std::map<std::string, Objective> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("registry: missing comma on line " + std::to_string(lineno));
    std::string name = line.substr(0, comma);
    std::string value_str = line.substr(comma + 1);

    Objective v = 0;
    auto [ptr, ec] = std::from_chars(value_str.data(), value_str.data() + value_str.size(), v);
    bool numeric = ec == std::errc{} && ptr == value_str.data() + value_str.size();
    if (!numeric && lineno == 1) continue;  // header row
    if (!numeric)
      throw std::invalid_argument("registry: non-numeric value on line " + std::to_string(lineno));
    if (v <= 0)
      throw std::invalid_argument("registry: best known for " + name + " must be positive");
    if (!values.emplace(name, v).second)
      throw std::invalid_argument("registry: duplicate instance " + name);
  }
  return from_map(std::move(values));
}

BestKnownRegistry BestKnownRegistry::from_map(std::map<std::string, Objective> values) {
  for (const auto& [name, v] : values)
    if (v <= 0)
      throw std::invalid_argument("registry: best known for " + name + " must be positive");
  BestKnownRegistry r;
  r.values_ = std::move(values);
  return r;
}

Objective BestKnownRegistry::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end())
    throw std::invalid_argument("registry: no best known value for instance " + name);
  return it->second;
}

QapInstance load_instance_file(const fs::path& path) {
  return parse_qaplib(read_file(path), path.stem().string());
}

std::vector<BenchRow> run_bench(const fs::path& dir, const BestKnownRegistry& registry,
                                const BenchConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("bench: repetitions must be >= 1");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".dat")
      files.push_back(entry.path());
  if (files.empty())
    throw std::invalid_argument("bench: no .dat instances in " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem() < b.stem(); });

  std::vector<QapInstance> instances;
  instances.reserve(files.size());
  for (const auto& f : files) {
    instances.push_back(load_instance_file(f));
    registry.at(instances.back().name());  // fail fast before any run
  }

  // One job per (instance, repetition); workers only change who runs what.
  const std::uint64_t reps = cfg.repetitions;
  const std::size_t jobs = instances.size() * reps;
  std::vector<Objective> bests(jobs);
  std::vector<double> seconds(jobs);
  std::vector<std::uint64_t> evals(jobs);

  std::atomic<std::size_t> next_job{0};
  auto worker = [&] {
    for (;;) {
      std::size_t job = next_job.fetch_add(1);
      if (job >= jobs) return;
      const QapInstance& inst = instances[job / reps];
      const std::uint64_t rep = job % reps;
      EdaConfig ec = cfg.eda;
      ec.eval_budget = cfg.budget_multiplier * static_cast<std::uint64_t>(inst.n()) *
                       static_cast<std::uint64_t>(inst.n());
      ec.seed = cfg.base_seed + rep;
      RunResult r = run(inst, ec);
      bests[job] = r.best_objective;
      seconds[job] = r.wall_seconds;
      evals[job] = r.evaluations_used;
    }
  };

  unsigned workers = std::max(1u, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  rows.reserve(instances.size());
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const QapInstance& inst = instances[idx];
    std::vector<Objective> objs(bests.begin() + static_cast<std::ptrdiff_t>(idx * reps),
                                bests.begin() + static_cast<std::ptrdiff_t>((idx + 1) * reps));
    double sum_obj = 0, sum_sec = 0;
    Objective best = objs.front();
    for (std::uint64_t r = 0; r < reps; ++r) {
      sum_obj += static_cast<double>(objs[r]);
      sum_sec += seconds[idx * reps + r];
      best = std::min(best, objs[r]);
    }
    rows.push_back({inst.name(), inst.n(), reps, sum_obj / static_cast<double>(reps), best,
                    ardp(registry.at(inst.name()), objs), sum_sec / static_cast<double>(reps),
                    evals[idx * reps]});
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "instance,n,reps,mean_objective,best_objective,ardp_percent,mean_seconds,evals_per_run\n";
  for (const BenchRow& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.reps << ',' << fmt_double(r.mean_objective)
        << ',' << r.best_objective << ',' << fmt_double(r.ardp_percent) << ','
        << fmt_double(r.mean_seconds) << ',' << r.evals_per_run << '\n';
  }
}

void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows,
                      const BenchConfig& cfg) {
  nlohmann::json doc;
  doc["config"] = {
      {"population_size", cfg.eda.population_size},
      {"gamma", cfg.eda.gamma},
      {"ek_start_fraction", cfg.eda.ek_start_fraction},
      {"ek_end", cfg.eda.ek_end},
      {"budget_multiplier", cfg.budget_multiplier},
      {"repetitions", cfg.repetitions},
      {"base_seed", cfg.base_seed},
      {"schedule",
       cfg.eda.schedule_kind == ScheduleKind::exponential ? "exponential" : "linear"},
      {"kernel_mode", cfg.eda.kernel_mode == KernelMode::kernels ? "kernels" : "best_only"},
  };
  doc["rows"] = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    doc["rows"].push_back({{"instance", r.instance},
                           {"n", r.n},
                           {"reps", r.reps},
                           {"mean_objective", r.mean_objective},
                           {"best_objective", r.best_objective},
                           {"ardp_percent", r.ardp_percent},
                           {"mean_seconds", r.mean_seconds},
                           {"evals_per_run", r.evals_per_run}});
  }
  out << doc.dump(2) << '\n';
}

void write_solution_file(const fs::path& path, const Permutation& sigma, Objective objective) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << sigma.size() << '\n';
  for (std::size_t i = 0; i < sigma.size(); ++i)
    out << (i ? " " : "") << sigma[i] + 1;
  out << '\n' << objective << '\n';
}

SolutionFile read_solution_file(const fs::path& path, std::size_t n) {
  std::vector<std::int64_t> toks = tokenize_ints(read_file(path), "solution");
  if (toks.empty() || toks[0] != static_cast<std::int64_t>(n))
    throw std::invalid_argument("solution: size does not match instance");
  if (toks.size() != 1 + n && toks.size() != 2 + n)
    throw std::invalid_argument("solution: expected n values and an optional objective");

  std::vector<std::int32_t> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t v = toks[1 + i] - 1;  // stored 1-based
    if (v < 0 || v >= static_cast<std::int64_t>(n))
      throw std::invalid_argument("solution: not a permutation");
    values[i] = static_cast<std::int32_t>(v);
  }
  if (!is_permutation_vector(values))
    throw std::invalid_argument("solution: not a permutation");

  SolutionFile s{Permutation::unchecked(std::move(values)), std::nullopt};
  if (toks.size() == 2 + n) s.objective = toks[1 + n];
  return s;
}

}  // namespace qapeda
