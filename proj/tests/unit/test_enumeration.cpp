#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mealypred/enumeration.hpp"
#include "mealypred/errors.hpp"
#include "mealypred/machine_format.hpp"
#include "oracles.hpp"

using namespace mealypred;

TEST_CASE("raw counts") {
  CHECK(raw_machine_count(1) == 4);
  CHECK(raw_machine_count(2) == 256);
  CHECK(raw_machine_count(3) == 46656);
  CHECK(count_machines(1, EnumerationMode::raw) == 4);
  CHECK(count_machines(2, EnumerationMode::raw) == 256);
}

TEST_CASE("index decoding covers every machine once") {
  for (std::size_t k = 1; k <= 2; ++k) {
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < raw_machine_count(k); ++i) {
      const auto m = machine_from_index(k, i);
      REQUIRE(machine_index(m) == i);
      seen.insert(serialize_machine(m));
    }
    std::set<std::string> brute;
    for (const auto& m : oracle::all_machines(k)) brute.insert(serialize_machine(m));
    CHECK(seen == brute);
  }
  CHECK_THROWS(machine_from_index(1, 4));
}

TEST_CASE("canonical forms") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto reps = oracle::class_representatives(k);
    CHECK(count_machines(k, EnumerationMode::canonical) == reps.size());

    std::uint64_t orbit_total = 0;
    std::set<std::string> canon;
    for (const auto& m : enumerate_machines(k, EnumerationMode::canonical)) {
      REQUIRE(is_canonical(m));
      REQUIRE(canonicalize(m) == m);
      orbit_total += orbit_size(m);
      canon.insert(serialize_machine(m));
    }
    CHECK(orbit_total == raw_machine_count(k));
    // Each oracle class lands on a distinct canonical member.
    std::set<std::string> images;
    for (const auto& r : reps) images.insert(serialize_machine(canonicalize(r)));
    CHECK(images == canon);
  }
}

TEST_CASE("canonicalization is invariant under relabeling") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 5;
    const auto m = oracle::random_machine(rng, k);
    std::vector<StateId> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    const auto moved = relabel(m, perm);
    REQUIRE(canonicalize(moved) == canonicalize(m));
    REQUIRE(canonicalize(canonicalize(m)) == canonicalize(m));
    REQUIRE(orbit_size(moved) == orbit_size(m));
    // Same input/output behaviour.
    for (int run = 0; run < 5; ++run) {
      const std::uint64_t g = rng();
      REQUIRE(oracle::simulate(m, g, 20).outputs ==
              oracle::simulate(canonicalize(m), g, 20).outputs);
    }
  }
}

TEST_CASE("relabel validates its permutation") {
  const auto m = machine_from_index(3, 1234);
  const std::vector<StateId> bad{0, 0, 1};
  CHECK_THROWS(relabel(m, bad));
  const std::vector<StateId> short_perm{0, 1};
  CHECK_THROWS(relabel(m, short_perm));
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(MealyMachine(1, {{0, 0}, {0, 1}})));
  // 0 -> 1 only, 1 absorbing.
  CHECK_FALSE(is_strongly_connected(MealyMachine(2, {{1, 0}, {1, 0}, {1, 1}, {1, 1}})));
  CHECK(is_strongly_connected(MealyMachine(2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}})));

  // Against a Floyd-Warshall style closure.
  for (const auto& m : enumerate_machines(3, EnumerationMode::canonical)) {
    const std::size_t k = m.num_states();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (StateId s = 0; s < k; ++s) {
      reach[s][s] = true;
      for (Bit b : {Bit{0}, Bit{1}}) reach[s][m.entry(s, b).next] = true;
    }
    for (std::size_t via = 0; via < k; ++via)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (reach[i][via] && reach[via][j]) reach[i][j] = true;
    bool all = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) all = all && reach[i][j];
    REQUIRE(is_strongly_connected(m) == all);
  }
  std::size_t sc = 0;
  for (const auto& m : enumerate_machines(3, EnumerationMode::canonical)) {
    sc += is_strongly_connected(m) ? 1 : 0;
  }
  CHECK(count_machines(3, EnumerationMode::strongly_connected) == sc);
}

TEST_CASE("order is deterministic and ranges split cleanly") {
  const auto all = enumerate_machines(2, EnumerationMode::canonical);
  CHECK(all == enumerate_machines(2, EnumerationMode::canonical));
  for (std::size_t i = 1; i < all.size(); ++i) {
    REQUIRE(machine_index(all[i - 1]) < machine_index(all[i]));
    REQUIRE(serialize_machine(all[i - 1]) < serialize_machine(all[i]));
  }
  std::vector<MealyMachine> pieced;
  for (std::uint64_t begin = 0; begin < 256; begin += 100) {
    MachineEnumerator e(2, EnumerationMode::canonical);
    e.restrict_to(begin, std::min<std::uint64_t>(begin + 100, 256));
    while (auto m = e.next()) pieced.push_back(*m);
  }
  CHECK(pieced == all);
}

TEST_CASE("caps and mode names") {
  CHECK_THROWS_AS(MachineEnumerator(4, EnumerationMode::raw), CapExceededError);
  CHECK_THROWS_AS(count_machines(5, EnumerationMode::canonical), CapExceededError);
  EnumerationCaps caps;
  caps.raw = 4;
  CHECK_NOTHROW(check_enumeration_cap(4, EnumerationMode::raw, caps));
  CHECK(parse_enumeration_mode("canonical") == EnumerationMode::canonical);
  CHECK(parse_enumeration_mode("strongly-connected") == EnumerationMode::strongly_connected);
  CHECK(std::string(to_string(EnumerationMode::raw)) == "raw");
  CHECK_THROWS(parse_enumeration_mode("everything"));
}
