#include <benchmark/benchmark.h>

#include "critic/critical.hpp"

using namespace critic;

namespace {

void BM_hyperbolic_times(benchmark::State& state) {
  std::vector<double> a(static_cast<size_t>(state.range(0)));
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = 0.2 + 3.0 * std::abs(std::sin(0.7 * static_cast<double>(i) + 0.3));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyperbolic_times(a, 1.05));
  }
}
BENCHMARK(BM_hyperbolic_times)->Arg(64)->Arg(1024)->Arg(16384);

void BM_block_membership(benchmark::State& state) {
  const OrbitSegment orbit = make_tangency_orbit(16, 16);
  BlockQuery q;
  q.alpha = 0.9;
  q.sign = BlockSign::backward;
  q.horizon = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(block_membership(orbit, 0, q));
  }
}
BENCHMARK(BM_block_membership);

void BM_detect_critical_hit(benchmark::State& state) {
  const OrbitSegment orbit = make_tangency_orbit(12, 12);
  const Beta beta(0.9, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_critical(orbit, 0, beta, 5));
  }
}
BENCHMARK(BM_detect_critical_hit);

void BM_detect_critical_miss(benchmark::State& state) {
  // The miss path walks the whole candidate grid.
  const OrbitSegment orbit = make_tangency_orbit(12, 12);
  const Beta beta(0.9, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_critical(orbit, 1, beta, 5));
  }
}
BENCHMARK(BM_detect_critical_miss);

void BM_domination_certificate(benchmark::State& state) {
  const std::vector<OrbitSegment> orbits{make_tangency_orbit(0, 64)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        domination_certificate(orbits, static_cast<int>(state.range(0)), 1.5, 1.0));
  }
}
BENCHMARK(BM_domination_certificate)->Arg(8)->Arg(32);

void BM_tangency_shift(benchmark::State& state) {
  RealSeq seq;
  seq.offset = -24;
  // Line of slope -0.6, between delta_plus and delta_minus.
  for (int n = -24; n <= 24; ++n) seq.values.push_back(-0.6 * n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tangency_shift(seq, -16, 16, -0.5, -0.7));
  }
}
BENCHMARK(BM_tangency_shift);

}  // namespace
