#include <benchmark/benchmark.h>

#include "irrmeasure/approxseq.hpp"

using namespace irrmeasure;

namespace {

CorollaryInstance cor(long u1, long u2, long t, unsigned long n) {
  CorollaryInstance ci;
  ci.u1 = u1;
  ci.u2 = u2;
  ci.t = t;
  ci.n = n;
  return ci;
}

void BM_XCoeffs(benchmark::State& state) {
  const auto r = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(x_coeffs(1, 3, r));
}
BENCHMARK(BM_XCoeffs)->RangeMultiplier(4)->Range(8, 512);

void BM_NumerN(benchmark::State& state) {
  HypPoly p = x_coeffs(1, 3, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numer_N(p, Integer(6)));
}
BENCHMARK(BM_NumerN)->RangeMultiplier(4)->Range(8, 512);

void BM_CalibrateCD(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_CD(1, 3, Integer(6), static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_CalibrateCD)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BuildPQ(benchmark::State& state) {
  CorollaryInstance ci = cor(100, 1, -3, 3);
  CorollaryChain ch = corollary_chain(ci);
  Theorem2Instance inst = with_constants(to_theorem2(ci, ch), ch.d);
  const auto r = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_pq(inst, ch.d, r));
}
BENCHMARK(BM_BuildPQ)->Arg(10)->Arg(60)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_RemainderIntegral(benchmark::State& state) {
  const Precision p = static_cast<Precision>(state.range(0));
  Ball z = Ball::from_rational(Rational(11, 10), Rational(1, 5), p);
  for (auto _ : state) benchmark::DoNotOptimize(remainder_integral(z, 1, 3, 6, p));
}
BENCHMARK(BM_RemainderIntegral)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RemainderDifference(benchmark::State& state) {
  const Precision p = static_cast<Precision>(state.range(0));
  Ball z = Ball::from_rational(Rational(11, 10), Rational(1, 5), p);
  for (auto _ : state) benchmark::DoNotOptimize(remainder_difference(z, 1, 3, 6, p));
}
BENCHMARK(BM_RemainderDifference)->Arg(128)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
