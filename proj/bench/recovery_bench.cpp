// Serial references against the OpenMP kernels, plus the bid solver.

#include <benchmark/benchmark.h>

#include "brandt/outcome_kernels.hpp"
#include "brandt/recovery.hpp"

using namespace brandt;

namespace {

std::vector<uint8_t> Bids(int n, int k) {
  Rng rng(1, 4000);
  std::vector<int> prices;
  for (int b = 0; b < n; ++b) prices.push_back(static_cast<int>(rng.Below(mpz_class(k)).get_si()) + 1);
  return BidVectorFromPrices(n, k, prices);
}

Grid<Ciphertext> RandomGrid(const GroupParams& gp, int n, int k) {
  Rng rng(2);
  Grid<Ciphertext> g(n, k);
  for (auto& c : g.data()) c = {gp.ExpG(gp.RandomScalar(rng)), gp.ExpG(gp.RandomScalar(rng))};
  return g;
}

void BM_ApplyFDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const StructuredMatrix m(n, k);
  const auto b = Bids(n, k);
  for (auto _ : state) benchmark::DoNotOptimize(ApplyFDense(m, b));
}
BENCHMARK(BM_ApplyFDense)->Args({10, 10})->Args({20, 50});

void BM_ApplyF(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const StructuredMatrix m(n, k);
  const auto b = Bids(n, k);
  for (auto _ : state) benchmark::DoNotOptimize(ApplyF(m, b));
}
BENCHMARK(BM_ApplyF)->Args({10, 10})->Args({20, 50})->Args({100, 1000});

void BM_RecoverBids(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const ExponentVector l = ApplyF(StructuredMatrix(n, k), Bids(n, k));
  for (auto _ : state) benchmark::DoNotOptimize(RecoverBids(l));
}
BENCHMARK(BM_RecoverBids)->Args({10, 10})->Args({100, 1000});

void BM_RecoverBidsDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const ExponentVector l = ApplyF(StructuredMatrix(n, k), Bids(n, k));
  for (auto _ : state) benchmark::DoNotOptimize(RecoverBidsDirect(l));
}
BENCHMARK(BM_RecoverBidsDirect)->Args({10, 10})->Args({30, 100});

void BM_OutcomeBasesReference(benchmark::State& state) {
  const GroupParams gp = GroupParams::Large();
  const auto bids = RandomGrid(gp, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(OutcomeBasesReference(gp, bids));
}
BENCHMARK(BM_OutcomeBasesReference)->Args({8, 16})->Unit(benchmark::kMillisecond);

void BM_OutcomeBases(benchmark::State& state) {
  const GroupParams gp = GroupParams::Large();
  const auto bids = RandomGrid(gp, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(OutcomeBases(gp, bids));
}
BENCHMARK(BM_OutcomeBases)->Args({8, 16})->Args({32, 64})->Unit(benchmark::kMillisecond);

void BM_RaiseCellsReference(benchmark::State& state) {
  const GroupParams gp = GroupParams::Large();
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const auto bases = RandomGrid(gp, n, k);
  Rng rng(3);
  Grid<Scalar> m(n, k);
  for (auto& s : m.data()) s = gp.RandomNonzeroScalar(rng);
  for (auto _ : state) benchmark::DoNotOptimize(RaiseCellsReference(gp, bases, m));
}
BENCHMARK(BM_RaiseCellsReference)->Args({8, 16})->Unit(benchmark::kMillisecond);

void BM_RaiseCells(benchmark::State& state) {
  const GroupParams gp = GroupParams::Large();
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const auto bases = RandomGrid(gp, n, k);
  Rng rng(3);
  Grid<Scalar> m(n, k);
  for (auto& s : m.data()) s = gp.RandomNonzeroScalar(rng);
  for (auto _ : state) benchmark::DoNotOptimize(RaiseCells(gp, bases, m));
}
BENCHMARK(BM_RaiseCells)->Args({8, 16})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
