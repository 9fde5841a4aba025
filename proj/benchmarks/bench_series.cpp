#include <benchmark/benchmark.h>

#include <random>

#include "divlab/series.hpp"

namespace {

using namespace divlab;

FourierTaylorSeries dense_series(const DomainSpec& d, int min_order,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierTaylorSeries s(d, min_order);
  for (int n = min_order; n <= d.taylor_order; ++n) {
    for (int j = -d.fourier_band; j <= d.fourier_band; ++j) {
      s.set(n, j, Complex{u(rng), u(rng)});
    }
  }
  return s;
}

void BM_SeriesMul(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const int band = static_cast<int>(state.range(1));
  DomainSpec d{1.0, 1.0, order, band};
  auto a = dense_series(d, 0, 1);
  auto b = dense_series(d, 1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fts_mul(a, b, order));
  }
}
BENCHMARK(BM_SeriesMul)->Args({16, 16})->Args({20, 60})->Args({32, 32});

void BM_SubstV(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  DomainSpec d{1.0, 1.0, order, 2 * order};
  auto u = dense_series(d, 0, 3);
  auto tail = dense_series(d, 2, 4);
  FourierTaylorSeries w(d, 1);
  w.set(1, 0, Complex{1.0, 0.0});
  w = fts_add(w, fts_scale(tail, Complex{0.05, 0.0}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(subst_v(u, w, order));
  }
}
BENCHMARK(BM_SubstV)->Arg(12)->Arg(20);

void BM_GermInverse(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  DomainSpec d{1.0, 1.0, order, 2 * order};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  MapGerm f;
  f.horizontal_shift = Complex{0.6, 2.0};
  f.multiplier = Complex{0.8, 0.6};
  f.h_perturbation = FourierTaylorSeries(d, 1);
  f.v_perturbation = FourierTaylorSeries(d, 2);
  for (int n = 1; n <= order; ++n) {
    for (int j = -2; j <= 2; ++j) {
      f.h_perturbation.set(n, j, Complex{u(rng), u(rng)});
      if (n >= 2) f.v_perturbation.set(n, j, Complex{u(rng), u(rng)});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(germ_inverse(f));
  }
}
BENCHMARK(BM_GermInverse)->Arg(12)->Arg(20);

}  // namespace
