#include <benchmark/benchmark.h>

#include <random>

#include "divlab/arnold.hpp"

namespace {

using namespace divlab;

TorusNeighborhood sample_neighborhood(int order, int band) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  DomainSpec d{1.0, 1.0, order, band * order};
  FourierTaylorSeries va(d, 1), vb(d, 1);
  for (int n = 1; n <= order; ++n) {
    for (int j = -band; j <= band; ++j) {
      va.set(n, j, Complex{u(rng), u(rng)});
      vb.set(n, j, Complex{u(rng), u(rng)});
    }
  }
  auto golden = Multiplier::rotation_from_cf(std::vector<std::uint64_t>(40, 1));
  return TorusNeighborhood::build(golden, Complex{0.3, 1.0}, va, vb);
}

void BM_VerticalLinearize(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  auto nbhd = sample_neighborhood(order, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vertical_linearize(nbhd, order));
  }
}
BENCHMARK(BM_VerticalLinearize)->Arg(8)->Arg(12)->Arg(16);

void BM_FullLinearizeNewton(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  auto nbhd = sample_neighborhood(order, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_linearize(nbhd, order, Scheme::NewtonDoubling));
  }
}
BENCHMARK(BM_FullLinearizeNewton)->Arg(8)->Arg(16);

}  // namespace
