#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qapeda/bench.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace qapeda;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("qapeda_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

// two tiny instances with brute-forced optima, plus their registry
struct Fixture {
  fs::path dir;
  fs::path registry_csv;
  Objective opt5 = -1;

  Fixture() {
    dir = make_temp_dir("bench");
    const char* data_dir = std::getenv("QAPEDA_DATA");
    REQUIRE(data_dir != nullptr);
    fs::copy_file(fs::path(data_dir) / "toy4.dat", dir / "toy4.dat");

    Rng rng(83);
    QapInstance inst5 = fuzz::random_instance(rng, 5, 20, "rand5");
    for (const auto& p : oracles::enumerate_permutations(5)) {
      auto f = static_cast<Objective>(
          oracles::qap_objective_brute(5, inst5.distance_data(), inst5.flow_data(), p));
      if (opt5 < 0 || f < opt5) opt5 = f;
    }
    REQUIRE(opt5 > 0);
    write_text(dir / "rand5.dat", serialize_qaplib(inst5));

    registry_csv = dir / "bestknown.csv";
    std::ostringstream csv;
    csv << "instance,best_known\ntoy4,144\nrand5," << opt5 << "\n";
    write_text(registry_csv, csv.str());
  }
};

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.eda.population_size = 60;
  cfg.budget_multiplier = 100;
  cfg.repetitions = 3;
  cfg.base_seed = 7;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST_CASE("registry parsing") {
  fs::path dir = make_temp_dir("registry");

  write_text(dir / "ok.csv", "instance,best_known\na,10\nb,20\n");
  BestKnownRegistry r = BestKnownRegistry::load_csv(dir / "ok.csv");
  CHECK(r.size() == 2);
  CHECK(r.at("a") == 10);
  CHECK(r.contains("b"));
  CHECK(!r.contains("c"));

  write_text(dir / "noheader.csv", "a,10\nb,20\n");
  CHECK(BestKnownRegistry::load_csv(dir / "noheader.csv").size() == 2);

  write_text(dir / "dup.csv", "a,10\na,20\n");
  CHECK_THROWS_AS(BestKnownRegistry::load_csv(dir / "dup.csv"), std::invalid_argument);
  write_text(dir / "nonpos.csv", "a,0\n");
  CHECK_THROWS_AS(BestKnownRegistry::load_csv(dir / "nonpos.csv"), std::invalid_argument);
  write_text(dir / "badval.csv", "a,10\nb,x\n");
  CHECK_THROWS_AS(BestKnownRegistry::load_csv(dir / "badval.csv"), std::invalid_argument);
  CHECK_THROWS(BestKnownRegistry::load_csv(dir / "missing.csv"));

  try {
    r.at("nug99");
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("nug99") != std::string::npos);
  }
}

TEST_CASE("bench aggregates runs deterministically") {
  Fixture fx;
  BestKnownRegistry registry = BestKnownRegistry::load_csv(fx.registry_csv);
  BenchConfig cfg = small_config();

  std::vector<BenchRow> rows = run_bench(fx.dir, registry, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].instance == "rand5");  // sorted by name
  CHECK(rows[1].instance == "toy4");
  CHECK(rows[1].n == 4);
  CHECK(rows[1].reps == 3);

  // cross-check one row against direct runs with the same seeds
  QapInstance toy = load_instance_file(fx.dir / "toy4.dat");
  std::vector<Objective> bests;
  double mean = 0;
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    EdaConfig ec = cfg.eda;
    ec.eval_budget = cfg.budget_multiplier * 16;
    ec.seed = cfg.base_seed + rep;
    RunResult r = run(toy, ec);
    bests.push_back(r.best_objective);
    mean += static_cast<double>(r.best_objective);
    CHECK(rows[1].evals_per_run == r.evaluations_used);
  }
  mean /= 3;
  CHECK(rows[1].mean_objective == doctest::Approx(mean).epsilon(1e-12));
  CHECK(rows[1].best_objective == *std::min_element(bests.begin(), bests.end()));
  CHECK(rows[1].ardp_percent == doctest::Approx(ardp(144, bests)).epsilon(1e-12));

  // worker count must not affect anything but timing
  cfg.workers = 3;
  std::vector<BenchRow> rows3 = run_bench(fx.dir, registry, cfg);
  REQUIRE(rows3.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows3[i].instance == rows[i].instance);
    CHECK(rows3[i].mean_objective == rows[i].mean_objective);
    CHECK(rows3[i].best_objective == rows[i].best_objective);
    CHECK(rows3[i].ardp_percent == rows[i].ardp_percent);
    CHECK(rows3[i].evals_per_run == rows[i].evals_per_run);
  }
}

TEST_CASE("bench error paths") {
  Fixture fx;
  BenchConfig cfg = small_config();

  BestKnownRegistry incomplete = BestKnownRegistry::from_map({{"toy4", 144}});
  try {
    run_bench(fx.dir, incomplete, cfg);
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("rand5") != std::string::npos);
  }

  fs::path empty = make_temp_dir("empty");
  CHECK_THROWS_AS(run_bench(empty, incomplete, cfg), std::invalid_argument);
}

TEST_CASE("csv writer emits a fixed format") {
  std::vector<BenchRow> rows = {
      {"tai10a", 10, 10, 135030.5, 135028, 0.001852, 0.25, 100116},
      {"nug17", 17, 10, 1733.2, 1732, 0.069284, 1.5, 288792},
  };
  std::ostringstream out;
  write_bench_csv(out, rows);
  CHECK(out.str() ==
        "instance,n,reps,mean_objective,best_objective,ardp_percent,mean_seconds,evals_per_run\n"
        "tai10a,10,10,135030.500000,135028,0.001852,0.250000,100116\n"
        "nug17,17,10,1733.200000,1732,0.069284,1.500000,288792\n");
}

TEST_CASE("json writer round trips through a parser") {
  Fixture fx;
  BestKnownRegistry registry = BestKnownRegistry::load_csv(fx.registry_csv);
  BenchConfig cfg = small_config();
  cfg.repetitions = 1;
  std::vector<BenchRow> rows = run_bench(fx.dir, registry, cfg);

  std::ostringstream out;
  write_bench_json(out, rows, cfg);
  CHECK(out.str().find("\"rows\"") != std::string::npos);
  CHECK(out.str().find("\"toy4\"") != std::string::npos);
  CHECK(out.str().find("\"base_seed\": 7") != std::string::npos);
}

TEST_CASE("solution file io") {
  fs::path dir = make_temp_dir("sol");
  Permutation sigma({2, 0, 3, 1});
  write_solution_file(dir / "a.sln", sigma, 144);

  std::ifstream in(dir / "a.sln", std::ios::binary);
  std::ostringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "4\n3 1 4 2\n144\n");

  SolutionFile sol = read_solution_file(dir / "a.sln", 4);
  CHECK(sol.sigma == sigma);
  REQUIRE(sol.objective.has_value());
  CHECK(*sol.objective == 144);

  write_text(dir / "noobj.sln", "4\n3 1 4 2\n");
  SolutionFile bare = read_solution_file(dir / "noobj.sln", 4);
  CHECK(bare.sigma == sigma);
  CHECK(!bare.objective.has_value());

  write_text(dir / "wrong_n.sln", "5\n3 1 4 2 5\n");
  CHECK_THROWS_AS(read_solution_file(dir / "wrong_n.sln", 4), std::invalid_argument);

  write_text(dir / "dup.sln", "4\n3 1 1 2\n");
  try {
    read_solution_file(dir / "dup.sln", 4);
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("not a permutation") != std::string::npos);
  }

  write_text(dir / "oob.sln", "4\n3 1 4 5\n");
  CHECK_THROWS_AS(read_solution_file(dir / "oob.sln", 4), std::invalid_argument);
  write_text(dir / "junk.sln", "4\n3 1 4 x\n");
  CHECK_THROWS(read_solution_file(dir / "junk.sln", 4));
}
