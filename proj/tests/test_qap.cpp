#include <doctest.h>

#include "qapeda/qap.hpp"
#include "qapeda/qap_kernels.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace qapeda;

namespace {
const char* kToy2 = "2\n0 1\n1 0\n0 3\n3 0";
}

TEST_CASE("parse_qaplib basics") {
  QapInstance inst = parse_qaplib(kToy2, "toy2");
  CHECK(inst.n() == 2);
  CHECK(inst.name() == "toy2");
  CHECK(inst.distance(0, 1) == 1);
  CHECK(inst.flow(0, 1) == 3);
  CHECK(inst.flow(1, 1) == 0);

  CHECK_THROWS_AS(parse_qaplib("", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qaplib("2\n0 1 1 0\n0 3 3", "x"), std::invalid_argument);  // short
  CHECK_THROWS_AS(parse_qaplib("2\n0 1 1 0\n0 3 3 0 7", "x"), std::invalid_argument);  // long
  CHECK_THROWS_AS(parse_qaplib("2\n0 z 1 0\n0 3 3 0", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qaplib("2\n0 1.5 1 0\n0 3 3 0", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qaplib("2\n0 -1 1 0\n0 3 3 0", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qaplib("1\n0\n0", "x"), std::invalid_argument);
  CHECK_NOTHROW(parse_qaplib("  2 \n\n 0 1\t1 0 \n 0 3 3 0\n\n", "x"));
}

TEST_CASE("serialize round trip") {
  Rng rng(17);
  QapInstance orig = fuzz::random_instance(rng, 7, 5000, "rt");
  QapInstance back = parse_qaplib(serialize_qaplib(orig), "rt");
  CHECK(back.n() == orig.n());
  CHECK(back.distance_data() == orig.distance_data());
  CHECK(back.flow_data() == orig.flow_data());
}

TEST_CASE("evaluate matches documented toy value and the brute-force oracle") {
  QapInstance toy = parse_qaplib(kToy2, "toy2");
  CHECK(evaluate(toy, Permutation::identity(2)) == 6);

  QapInstance zero_flow("zf", 3, {0, 1, 2, 3, 0, 4, 5, 6, 0}, std::vector<std::int64_t>(9, 0));
  for (const auto& p : oracles::enumerate_permutations(3))
    CHECK(evaluate(zero_flow, Permutation(p)) == 0);

  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    QapInstance inst = fuzz::random_instance(rng, 4, 10000);
    for (const auto& p : oracles::enumerate_permutations(4)) {
      auto expected = oracles::qap_objective_brute(4, inst.distance_data(), inst.flow_data(), p);
      CHECK(static_cast<__int128>(evaluate(inst, Permutation(p))) == expected);
    }
  }

  CHECK_THROWS_AS(evaluate(toy, Permutation::identity(3)), std::invalid_argument);
}

TEST_CASE("delta_swap is exact on fuzzed asymmetric instances") {
  Rng rng(29);
  for (int it = 0; it < 1000; ++it) {
    std::size_t n = 2 + rng.below(29);
    QapInstance inst = fuzz::random_instance(rng, n, 10000);
    Permutation sigma = random_permutation(n, rng);
    Objective f = evaluate(inst, sigma);

    std::size_t i1 = rng.below(n);
    std::size_t i2 = (i1 + 1 + rng.below(n - 1)) % n;
    Objective via_delta = delta_swap(inst, sigma, f, i1, i2);

    std::vector<std::int32_t> swapped = sigma.values();
    std::swap(swapped[i1], swapped[i2]);
    CHECK(via_delta == evaluate(inst, Permutation::unchecked(swapped)));
  }
}

TEST_CASE("delta_swap involution and swap chains") {
  Rng rng(31);
  // swapping back returns to the original objective
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 2 + rng.below(20);
    QapInstance inst = fuzz::random_instance(rng, n, 1000);
    Permutation sigma = random_permutation(n, rng);
    Objective f = evaluate(inst, sigma);
    std::size_t i1 = rng.below(n);
    std::size_t i2 = (i1 + 1 + rng.below(n - 1)) % n;
    Objective f2 = delta_swap(inst, sigma, f, i1, i2);
    std::vector<std::int32_t> swapped = sigma.values();
    std::swap(swapped[i1], swapped[i2]);
    CHECK(delta_swap(inst, Permutation::unchecked(swapped), f2, i1, i2) == f);
  }

  // chains of up to 50 swaps track the full evaluation exactly
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 2 + rng.below(39);
    QapInstance inst = fuzz::random_instance(rng, n, 1000);
    std::vector<std::int32_t> cur = random_permutation(n, rng).values();
    Objective f = evaluate(inst, Permutation::unchecked(cur));
    std::size_t len = 1 + rng.below(50);
    for (std::size_t s = 0; s < len; ++s) {
      std::size_t i1 = rng.below(n);
      std::size_t i2 = (i1 + 1 + rng.below(n - 1)) % n;
      f = delta_swap(inst, Permutation::unchecked(cur), f, i1, i2);
      std::swap(cur[i1], cur[i2]);
      CHECK(f == evaluate(inst, Permutation::unchecked(cur)));
    }
  }
}

TEST_CASE("delta_swap argument validation") {
  Rng rng(37);
  QapInstance inst = fuzz::random_instance(rng, 5, 100);
  Permutation sigma = random_permutation(5, rng);
  Objective f = evaluate(inst, sigma);
  CHECK_THROWS_AS(delta_swap(inst, sigma, f, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(delta_swap(inst, sigma, f, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(delta_swap(inst, sigma, f, 9, 1), std::invalid_argument);
}

TEST_CASE("ardp") {
  CHECK(ardp(100, {105}) == doctest::Approx(5.0));
  CHECK(ardp(100, {100, 100}) == doctest::Approx(0.0));
  CHECK(ardp(200, {210, 190}) == doctest::Approx(0.0));
  CHECK(ardp(1732, {1732, 1764}) == doctest::Approx(100.0 * 16.0 / 1732.0).epsilon(1e-12));
  CHECK_THROWS_AS(ardp(0, {5}), std::invalid_argument);
  CHECK_THROWS_AS(ardp(-3, {5}), std::invalid_argument);
  CHECK_THROWS_AS(ardp(100, {}), std::invalid_argument);
}

TEST_CASE("int32 mirrors agree with the canonical matrices") {
  Rng rng(41);
  QapInstance inst = fuzz::random_instance(rng, 6, 100000);
  REQUIRE(inst.fits32());
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(inst.distance32()[i * 6 + j] == inst.distance(i, j));
      CHECK(inst.distance32_t()[j * 6 + i] == inst.distance(i, j));
      CHECK(inst.flow32()[i * 6 + j] == inst.flow(i, j));
      CHECK(inst.flow32_t()[j * 6 + i] == inst.flow(i, j));
    }
  }

  QapInstance big("big", 2, {0, 1, 1, 0}, {0, std::int64_t{1} << 40, std::int64_t{1} << 40, 0});
  CHECK(!big.fits32());
  CHECK(evaluate(big, Permutation::identity(2)) == (std::int64_t{1} << 41));
}
