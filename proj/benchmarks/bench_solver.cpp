#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "pricechain/dynamic_pricing.hpp"
#include "pricechain/generator.hpp"
#include "pricechain/static_pricing.hpp"

using namespace pricechain;

static void BM_SolveChainTwoModels(benchmark::State& state) {
  Scenario scn = pctest::make_s2();
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain(scn));
}
BENCHMARK(BM_SolveChainTwoModels);

static void BM_SolveChainFiveModels(benchmark::State& state) {
  // deterministic 5-model scenario from the generator stream
  Scenario five = pctest::make_s2();
  for (const auto& scn : generate_scenarios(11, 40))
    if (scn.n() == 5) {
      five = scn;
      break;
    }
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain(five));
}
BENCHMARK(BM_SolveChainFiveModels);

static void BM_OracleAllocate(benchmark::State& state) {
  Scenario scn = pctest::make_s2();
  const auto accs = scn.accuracies();
  const std::vector<double> prices = {0.3, 1.2};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oracle_allocate(prices, scn.family, accs, scn.dist, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OracleAllocate)->Arg(10000)->Arg(100000);

static void BM_BestResponse(benchmark::State& state) {
  Scenario scn = pctest::make_s2();
  const std::vector<double> prices = {0.3, 0.75};
  for (auto _ : state) benchmark::DoNotOptimize(best_response(1, prices, scn));
}
BENCHMARK(BM_BestResponse);

static void BM_FindEquilibrium(benchmark::State& state) {
  Scenario scn = pctest::make_s2();
  for (auto _ : state) benchmark::DoNotOptimize(find_equilibrium(scn, {0.1, 0.1}, 200, 1e-6));
}
BENCHMARK(BM_FindEquilibrium);

BENCHMARK_MAIN();
