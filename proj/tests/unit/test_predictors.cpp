#include "doctest.h"

#include <memory>
#include <random>

#include "mealypred/enumeration.hpp"
#include "mealypred/errors.hpp"
#include "mealypred/predictor.hpp"
#include "mealypred/spectral.hpp"
#include "mealypred/zoo.hpp"
#include "oracles.hpp"

using namespace mealypred;

namespace {

std::shared_ptr<const MealyMachine> share(MealyMachine m) {
  return std::make_shared<const MealyMachine>(std::move(m));
}

// Consistency predictor after observing the first `length` bits of `word`.
ConsistencyPredictor after(const MealyMachine& m, std::uint64_t word,
                           std::size_t length) {
  ConsistencyPredictor p(share(m));
  for (std::size_t i = 0; i < length; ++i) p.observe((word >> i) & 1U);
  return p;
}

}  // namespace

TEST_CASE("output-indexed matrices add up to the adjacency matrix") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_machine(rng, 1 + rng() % 6);
    const OutputTransitionMatrices mats(m);
    const auto a = adjacency(m);
    for (std::size_t i = 0; i < m.num_states(); ++i) {
      for (std::size_t j = 0; j < m.num_states(); ++j) {
        CHECK(mats(0, i, j) + mats(1, i, j) == a(i, j));
        CHECK(mats(0, i, j) <= 2);
      }
    }
  }
}

TEST_CASE("consistency vectors agree with brute-force class counts") {
  // All canonical machines with up to 2 states plus a sample of 3-state ones;
  // the acceptance suite covers every 3-state machine up to t = 10.
  std::vector<MealyMachine> machines;
  for (std::size_t k = 1; k <= 2; ++k) {
    for (auto& m : enumerate_machines(k, EnumerationMode::canonical)) machines.push_back(m);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) machines.push_back(canonicalize(oracle::random_machine(rng, 3)));

  for (const auto& m : machines) {
    for (std::size_t t = 0; t <= 7; ++t) {
      for (const auto& [word, counts] : oracle::classes(m, t)) {
        const auto p = after(m, word, t);
        for (std::size_t s = 0; s < m.num_states(); ++s) {
          REQUIRE(p.vector()[s] == counts[s]);
        }
        const auto [zeros, ones] = oracle::next_output_counts(m, word, t);
        REQUIRE(p.zero_count() == zeros);
        REQUIRE(p.one_count() == ones);
        REQUIRE(p.predict() == (zeros >= ones ? 0 : 1));
      }
    }
  }
}

TEST_CASE("conservation: observing d keeps exactly the continuations emitting d") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_machine(rng, 1 + rng() % 5);
    ConsistencyPredictor p(share(m), InconsistencyPolicy::lenient);
    for (int step = 0; step < 20; ++step) {
      const Bit d = rng() & 1U;
      const BigCount expected = d ? p.one_count() : p.zero_count();
      p.observe(d);
      CHECK(p.vector().total() == expected);
    }
  }
}

TEST_CASE("class error equals min(#p, #q) and no other choice does better") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = oracle::random_machine(rng, 1 + rng() % 3);
    for (std::size_t t = 0; t <= 6; ++t) {
      for (const auto& [word, counts] : oracle::classes(m, t)) {
        const auto p = after(m, word, t);
        const auto [zeros, ones] = oracle::next_output_counts(m, word, t);
        const std::uint64_t class_error = p.predict() == 0 ? ones : zeros;
        CHECK(BigCount(class_error) == (p.zero_count() < p.one_count()
                                            ? p.zero_count()
                                            : p.one_count()));
        CHECK(class_error <= std::min(zeros, ones));
      }
    }
  }
}

TEST_CASE("ties predict 0") {
  // The identity machine emits its input: every class splits evenly.
  ConsistencyPredictor p(share(zoo::identity()));
  for (int i = 0; i < 5; ++i) {
    CHECK(p.zero_count() == p.one_count());
    CHECK(p.predict() == 0);
    p.observe(1);
  }
}

TEST_CASE("alternating ring is predicted perfectly") {
  ConsistencyPredictor p(share(zoo::alternating()));
  const auto trace = trace_predictor(p, BitSequence::from_string("0101010101"));
  CHECK(trace.errors() == 0);
  // A 3-state ring 110 starting anywhere in phase is pinned down at once.
  constexpr std::array<Bit, 3> outs{1, 1, 0};
  const auto ring = zoo::ring(outs);
  CHECK(trace_predictor(ConsistencyPredictor(share(ring)),
                        BitSequence::from_string("110110110"))
            .errors() == 0);
}

TEST_CASE("inconsistent observations") {
  ConsistencyPredictor strict(share(zoo::constant(0)));
  CHECK_THROWS_AS(strict.observe(1), InconsistentObservationError);

  ConsistencyPredictor lenient(share(zoo::constant(0)), InconsistencyPolicy::lenient);
  lenient.observe(1);
  CHECK(lenient.inconsistent());
  CHECK(lenient.vector().is_zero());
  CHECK(lenient.predict() == 0);
  lenient.reset();
  CHECK_FALSE(lenient.inconsistent());
  CHECK(lenient.vector().total() == 1);
}

TEST_CASE("known-state predictor") {
  SUBCASE("constant machine") {
    KnownStatePredictor p(share(zoo::constant(0)));
    CHECK(p.predict() == 0);
    CHECK(oracle::known_state_error_sum(zoo::constant(0), 10).total == 0);
  }
  SUBCASE("L11 state predicts 1 whatever the input") {
    KnownStatePredictor p(share(zoo::constant(1)));
    CHECK(p.predict() == 1);
  }
  SUBCASE("unbiased state predicts 0") {
    KnownStatePredictor p(share(zoo::difference()));
    p.reveal_state(1);
    CHECK(p.predict() == 0);
    CHECK_THROWS_AS(p.reveal_state(2), InvalidStateError);
  }
  SUBCASE("needs the hidden state when traced") {
    KnownStatePredictor p(share(zoo::shift()));
    CHECK_THROWS_AS(trace_predictor(p, BitSequence::from_string("01")),
                    std::invalid_argument);
    const auto input = BitSequence::from_string("0110");
    const auto run = run_traced(zoo::shift(), input);
    CHECK(trace_predictor(p, run.output, &run.path).errors() == 0);
  }
}

TEST_CASE("ensemble predictor") {
  SUBCASE("singleton reduces to the consistency predictor") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
      const auto m = share(oracle::random_machine(rng, 1 + rng() % 3));
      ConsistencyPredictor single(m, InconsistencyPolicy::lenient);
      EnsemblePredictor ensemble({m}, InconsistencyPolicy::lenient);
      for (int step = 0; step < 10; ++step) {
        REQUIRE(single.predict() == ensemble.predict());
        REQUIRE(single.zero_count() == ensemble.zero_count());
        REQUIRE(single.one_count() == ensemble.one_count());
        const Bit d = rng() & 1U;
        single.observe(d);
        ensemble.observe(d);
      }
    }
  }
  SUBCASE("constant machines: observing 00 eliminates constant-1") {
    EnsemblePredictor p({share(zoo::constant(0)), share(zoo::constant(1))});
    p.observe(0);
    p.observe(0);
    CHECK(p.eliminated(1));
    CHECK_FALSE(p.eliminated(0));
    CHECK(p.predict() == 0);
    CHECK_THROWS_AS(p.observe(1), InconsistentObservationError);
  }
  SUBCASE("aggregate ties predict 0") {
    // Find a pair of machines (k <= 2) and a prefix of length <= 4 where the
    // pooled counts tie while neither machine alone is split evenly.
    bool found = false;
    const auto ones = enumerate_machines(1, EnumerationMode::canonical);
    auto pool = enumerate_machines(2, EnumerationMode::canonical);
    pool.insert(pool.begin(), ones.begin(), ones.end());
    for (std::size_t i = 0; i < pool.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < pool.size() && !found; ++j) {
        for (std::size_t t = 0; t <= 4 && !found; ++t) {
          for (std::uint64_t w = 0; w < (1U << t) && !found; ++w) {
            auto [z1, o1] = oracle::next_output_counts(pool[i], w, t);
            auto [z2, o2] = oracle::next_output_counts(pool[j], w, t);
            if (z1 + o1 == 0 || z2 + o2 == 0) continue;
            if (z1 == o1 || z2 == o2 || z1 + z2 != o1 + o2) continue;
            EnsemblePredictor p({share(pool[i]), share(pool[j])});
            for (std::size_t b = 0; b < t; ++b) p.observe((w >> b) & 1U);
            CHECK(p.zero_count() == p.one_count());
            CHECK(p.predict() == 0);
            found = true;
          }
        }
      }
    }
    CHECK(found);
  }
}

TEST_CASE("clone, assign and reset") {
  auto m = share(zoo::figure1());
  ConsistencyPredictor p(m);
  p.observe(0);
  p.observe(0);
  auto copy = p.clone();
  CHECK(dynamic_cast<ConsistencyPredictor&>(*copy).vector() == p.vector());
  ConsistencyPredictor other(m);
  other.assign(p);
  CHECK(other.vector() == p.vector());
  other.reset();
  CHECK(other.vector() == ConsistencyVector::initial(*m));
}
