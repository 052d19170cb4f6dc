#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mealypred/enumeration.hpp"
#include "mealypred/evaluation.hpp"
#include "mealypred/search.hpp"
#include "mealypred/spectral.hpp"
#include "mealypred/zoo.hpp"

using namespace mealypred;

namespace {

void BM_ExhaustiveConsistency(benchmark::State& state) {
  const auto m = std::make_shared<const MealyMachine>(zoo::figure1());
  const ConsistencyPredictor p(m);
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_exhaustive(*m, p, t));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << t));
}
BENCHMARK(BM_ExhaustiveConsistency)->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveKnownState(benchmark::State& state) {
  const auto m = std::make_shared<const MealyMachine>(zoo::figure1());
  const KnownStatePredictor p(m);
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_exhaustive(*m, p, t));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << t));
}
BENCHMARK(BM_ExhaustiveKnownState)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const auto m = std::make_shared<const MealyMachine>(zoo::figure1());
  const ConsistencyPredictor p(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_monte_carlo(*m, p, 64, 4096, 0));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<MealyMachine> machines;
  for (int i = 0; i < 64; ++i) {
    machines.push_back(machine_from_index(k, rng() % raw_machine_count(k)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonicalize(machines[i++ % machines.size()]));
  }
}
BENCHMARK(BM_Canonicalize)->DenseRange(2, 6, 2);

void BM_CanonicalEnumeration(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_machines(3, EnumerationMode::canonical));
  }
}
BENCHMARK(BM_CanonicalEnumeration)->Unit(benchmark::kMillisecond);

void BM_Stationary(benchmark::State& state) {
  const auto m = zoo::figure1();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_frequencies(m));
  }
}
BENCHMARK(BM_Stationary);

void BM_SearchTwoStates(benchmark::State& state) {
  const std::vector<MealyMachine> targets{zoo::figure1()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_best_predictor(targets, 2, 10));
  }
}
BENCHMARK(BM_SearchTwoStates)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
