#include <benchmark/benchmark.h>

#include "divlab/majorant.hpp"

namespace {

using namespace divlab;

void BM_EtaSequence(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  std::vector<double> ks(len - 1, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_sequence(ks, len));
  }
}
BENCHMARK(BM_EtaSequence)->Arg(50)->Arg(200);

void BM_FullMajorant(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  MajorantParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_full_majorant(p, order));
  }
}
BENCHMARK(BM_FullMajorant)->Arg(50)->Arg(100);

}  // namespace
