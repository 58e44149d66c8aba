#include <benchmark/benchmark.h>

#include <random>

#include "critic/sphere.hpp"
#include "support/random_fixtures.hpp"

using namespace critic;

namespace {

void BM_multiplier_norm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Mat2C a = critic::testing::random_invertible(rng);
  const SpherePoint z = critic::testing::random_sphere_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplier_norm(a, z));
  }
}
BENCHMARK(BM_multiplier_norm);

void BM_multiplier_norm_in_metric(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Mat2C a = critic::testing::random_invertible(rng);
  const SpherePoint z = critic::testing::random_sphere_point(rng);
  const HermitianForm h = HermitianForm::diagonal(4.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplier_norm_in_metric(a, z, h));
  }
}
BENCHMARK(BM_multiplier_norm_in_metric);

void BM_spherical_distance(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Direction a = critic::testing::random_direction(rng);
  const Direction b = critic::testing::random_direction(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherical_distance(a, b));
  }
}
BENCHMARK(BM_spherical_distance);

void BM_svd2(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Mat2C a = critic::testing::random_invertible(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd2(a));
  }
}
BENCHMARK(BM_svd2);

void BM_fibonacci_directions(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fibonacci_directions(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_fibonacci_directions)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
