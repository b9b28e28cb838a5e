#include <benchmark/benchmark.h>

#include "skein/builders.hpp"
#include "skein/skein.hpp"

namespace {

using namespace skein;

// State-sum cost doubles per crossing: the product of (1,0) with (1,k) has
// exactly k crossings, so the range argument is the exponent.
void bracket_product_states(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Diagram d = build_product_diagram(Multicurve::torus_class(1, 0, 1),
                                    Multicurve::torus_class(1, k, 1));
  BracketOptions opts;
  opts.max_crossings = 26;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket_resolve(d, opts));
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << k));
}

BENCHMARK(bracket_product_states)->DenseRange(2, 16, 2);

void expansion_order(benchmark::State& state) {
  LaurentPolynomial p;
  for (int k = -8; k <= 8; ++k) p.add_term(k, Int(k * k + 1));
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand_laurent(p, order));
  }
}

BENCHMARK(expansion_order)->DenseRange(4, 20, 4);

}  // namespace

BENCHMARK_MAIN();
