#include <benchmark/benchmark.h>

#include <random>

#include "critic/henon.hpp"
#include "critic/orbit.hpp"
#include "support/random_fixtures.hpp"

using namespace critic;

namespace {

void BM_compose(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const OrbitSegment orbit =
      critic::testing::random_orbit(rng, 0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(orbit, 0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_compose)->Arg(8)->Arg(64)->Arg(512);

void BM_log_g(benchmark::State& state) {
  std::mt19937_64 rng(12);
  const OrbitSegment orbit =
      critic::testing::random_orbit(rng, 0, static_cast<int>(state.range(0)));
  const Direction xi = critic::testing::random_direction(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_g(orbit, 0, xi, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_log_g)->Arg(8)->Arg(64)->Arg(512);

void BM_lyapunov_estimate(benchmark::State& state) {
  std::mt19937_64 rng(13);
  const OrbitSegment orbit = critic::testing::random_orbit(rng, 0, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov_estimate(orbit, 0, 64));
  }
}
BENCHMARK(BM_lyapunov_estimate);

void BM_henon_orbit_segment(benchmark::State& state) {
  const HenonMap map = HenonMap::quadratic(Complex{-6.0, 0.0}, Complex{0.1, 0.0});
  const auto pps = newton_periodic(map, 1);
  const Point2C z0 = pps.back().point;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_segment(map, z0, 8, 8, 6.2));
  }
}
BENCHMARK(BM_henon_orbit_segment);

void BM_newton_periodic(benchmark::State& state) {
  const HenonMap map = HenonMap::quadratic(Complex{-6.0, 0.0}, Complex{0.1, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_periodic(map, 1, 16));
  }
}
BENCHMARK(BM_newton_periodic);

}  // namespace
