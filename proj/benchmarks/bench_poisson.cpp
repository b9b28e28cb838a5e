#include <benchmark/benchmark.h>

#include "skein/poisson.hpp"

namespace {

using namespace skein;

// The two bracket formulas trade work differently: the state sum walks the
// smoothing states of one product diagram, while the commutator resolves
// both orders of the product and divides the difference by h. The pair
// ((1,0), (1,k)) has k crossings, so the range argument sets the state count.

void poisson_statesum_pair(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Multicurve x = Multicurve::torus_class(1, 0, 1);
  Multicurve y = Multicurve::torus_class(1, k, 1);
  for (auto _ : state) {
    ProductCache cache;  // fresh cache, so every iteration does full work
    benchmark::DoNotOptimize(poisson_statesum(x, y, {}, &cache));
  }
}

BENCHMARK(poisson_statesum_pair)->DenseRange(1, 9, 2);

void poisson_commutator_pair(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Multicurve x = Multicurve::torus_class(1, 0, 1);
  Multicurve y = Multicurve::torus_class(1, k, 1);
  for (auto _ : state) {
    ProductCache cache;
    benchmark::DoNotOptimize(poisson_commutator(x, y, 2, {}, &cache));
  }
}

BENCHMARK(poisson_commutator_pair)->DenseRange(1, 9, 2);

}  // namespace
