#include <benchmark/benchmark.h>

#include <complex>

#include "metaschwarz/boundary.hpp"
#include "metaschwarz/integral_ops.hpp"
#include "metaschwarz/schwarz.hpp"

using namespace metaschwarz;

namespace {

BivarPoly sample_poly(int degree) {
  BivarPoly p;
  for (int m = 0; m <= degree; ++m) {
    for (int k = 0; m + k <= degree; ++k) p.add_term(m, k, cplx{1.0 / (1 + m), 0.5 / (1 + k)});
  }
  return p;
}

SchwarzSpec sample_spec(int n) {
  SchwarzSpec spec;
  spec.n = n;
  spec.A = sample_poly(2);
  for (int k = 0; k < n; ++k) spec.levels.push_back({HoloSeries({1.0, cplx{0.0, 0.5}, 0.25, 0.125}), 0.5 * k});
  return spec;
}

void BM_TeodorescuClosedForm(benchmark::State& state) {
  const BivarPoly f = sample_poly(static_cast<int>(state.range(0)));
  const cplx z{0.3, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(teodorescu(f, z));
}
BENCHMARK(BM_TeodorescuClosedForm)->Arg(2)->Arg(4)->Arg(8);

void BM_TeodorescuQuadrature(benchmark::State& state) {
  const BivarPoly f = sample_poly(static_cast<int>(state.range(0)));
  const DiskFunction g = [&f](cplx w) { return f(w); };
  const cplx z{0.3, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(teodorescu_quadrature_oracle(g, z));
}
BENCHMARK(BM_TeodorescuQuadrature)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveMeta(benchmark::State& state) {
  const SchwarzSpec spec = sample_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_meta(spec));
}
BENCHMARK(BM_SolveMeta)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_PairingLimit(benchmark::State& state) {
  const RadialSequence rs;
  const TestFunction phi = TestFunction::mode(-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairing_limit([](cplx w) { return std::exp(std::conj(w)) * w * w * w; }, phi, rs));
  }
}
BENCHMARK(BM_PairingLimit)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
