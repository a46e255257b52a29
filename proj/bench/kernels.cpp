// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "xyz/distance.hpp"
#include "xyz/products.hpp"
#include "xyz/simulation.hpp"

using namespace xyz;

namespace {

const StabilizerCode& chamon3_444() {
  static const StabilizerCode code = chamon3(4, 4, 4);
  return code;
}

const StabilizerCode& chamon4_3434() {
  static const StabilizerCode code = chamon4(3, 4, 3, 4);
  return code;
}

void BM_RunTrials(benchmark::State& state) {
  const NoiseModel model = NoiseModel::depolarizing(0.12);
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(chamon3_444(), model, 200, 1).failures);
}

void BM_RunTrialsSerial(benchmark::State& state) {
  const NoiseModel model = NoiseModel::depolarizing(0.12);
  for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(chamon3_444(), model, 200, 1).failures);
}

void BM_Count4Cycles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_4cycles(chamon4_3434(), CycleMode::PauliSupport));
}

void BM_Count4CyclesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_4cycles_serial(chamon4_3434(), CycleMode::PauliSupport));
}

void BM_McDistance(benchmark::State& state) {
  const Product4Spec spec = toric4_spec(3, 4, 3, 4);
  const LogicalBasis basis = logical_basis_closed_form(spec);
  for (auto _ : state) benchmark::DoNotOptimize(mc_distance(chamon4_3434(), basis, {2000, 1, 64}).weight);
}

void BM_McDistanceSerial(benchmark::State& state) {
  const Product4Spec spec = toric4_spec(3, 4, 3, 4);
  const LogicalBasis basis = logical_basis_closed_form(spec);
  for (auto _ : state) benchmark::DoNotOptimize(mc_distance_serial(chamon4_3434(), basis, {2000, 1, 64}).weight);
}

void BM_ExactDistance(benchmark::State& state) {
  const StabilizerCode code = chamon4(3, 3, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_distance(code, 6).weight);
}

void BM_ExactDistanceSerial(benchmark::State& state) {
  const StabilizerCode code = chamon4(3, 3, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_distance_serial(code, 6).weight);
}

}  // namespace

BENCHMARK(BM_RunTrials)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunTrialsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Count4Cycles)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Count4CyclesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McDistance)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McDistanceSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactDistance)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactDistanceSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
