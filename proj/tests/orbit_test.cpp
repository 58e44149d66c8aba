#include <doctest.h>

#include <cmath>

#include "critic/orbit.hpp"
#include "support/random_fixtures.hpp"

using namespace critic;
using critic::testing::constant_orbit;
using critic::testing::random_direction;
using critic::testing::random_orbit;

namespace {

const Direction e1(Complex{1.0, 0.0}, Complex{});
const Direction e2(Complex{}, Complex{1.0, 0.0});

}  // namespace

TEST_CASE("orbit construction guards") {
  std::vector<BasePoint> pts(3);
  std::vector<Mat2C> mats(2, Mat2C::identity());
  CHECK_NOTHROW(OrbitSegment("ok", -1, pts, mats));
  // window must contain 0
  CHECK_THROWS_AS(OrbitSegment("bad", 1, pts, mats), std::invalid_argument);
  // length mismatch
  CHECK_THROWS_AS(OrbitSegment("bad", -1, pts, {Mat2C::identity()}),
                  std::invalid_argument);
  // degenerate matrix rejected at ingestion
  std::vector<Mat2C> degenerate{Mat2C::diag(Complex{}, Complex{1.0, 0.0}),
                                Mat2C::identity()};
  CHECK_THROWS_AS(OrbitSegment("bad", -1, pts, degenerate), std::invalid_argument);
}

TEST_CASE("compose") {
  const OrbitSegment orbit =
      constant_orbit(Mat2C::diag(Complex{2.0, 0.0}, Complex{0.5, 0.0}), 5, 5);

  const ScaledMat zero = compose(orbit, 0, 0);
  CHECK(zero.log_scale == 0.0);
  CHECK(std::abs(zero.matrix.a - Complex{1.0, 0.0}) == 0.0);
  CHECK(std::abs(zero.matrix.d - Complex{1.0, 0.0}) == 0.0);

  // n = 3 is proportional to diag(8, 0.125).
  const ScaledMat cube = compose(orbit, 0, 3);
  const double scale = std::exp(cube.log_scale);
  CHECK(std::abs(scale * cube.matrix.a - Complex{8.0, 0.0}) <= 1e-12 * 8.0);
  CHECK(std::abs(scale * cube.matrix.d - Complex{0.125, 0.0}) <= 1e-12);
  CHECK(std::abs(cube.matrix.b) == 0.0);
  CHECK(std::abs(cube.matrix.c) == 0.0);

  // n = -1 inverts the previous step.
  const ScaledMat back = compose(orbit, 0, -1);
  const double bscale = std::exp(back.log_scale);
  CHECK(std::abs(bscale * back.matrix.a - Complex{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(bscale * back.matrix.d - Complex{2.0, 0.0}) <= 1e-12 * 2.0);

  CHECK_THROWS_AS(compose(orbit, 0, 6), std::out_of_range);
  CHECK_THROWS_AS(compose(orbit, -5, -1), std::out_of_range);
}

TEST_CASE("compose does not overflow on long contractions") {
  // |det A^n| underflows by n ~ 700 without renormalization.
  const OrbitSegment orbit =
      constant_orbit(Mat2C::diag(Complex{0.05, 0.0}, Complex{0.02, 0.0}), 0, 900);
  const ScaledMat it = compose(orbit, 0, 900);
  CHECK(std::isfinite(it.log_scale));
  CHECK(it.matrix.is_finite());
  CHECK(it.matrix.frobenius_norm() == doctest::Approx(1.0));
  const double expected = 900.0 * std::log(0.05);
  CHECK(it.log_scale + std::log(svd2(it.matrix).sigma_max) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("log_g closed forms") {
  const OrbitSegment id_orbit = constant_orbit(Mat2C::identity(), 4, 4);
  std::mt19937_64 rng(21);
  for (int n = -4; n <= 4; ++n) {
    CHECK(std::abs(log_g(id_orbit, 0, random_direction(rng), n)) <= 1e-12);
  }

  const OrbitSegment orbit =
      constant_orbit(Mat2C::diag(Complex{0.8, 0.0}, Complex{0.1, 0.0}), 6, 6);
  CHECK(log_g(orbit, 0, e1, 1) == doctest::Approx(std::log(0.125)));
  CHECK(log_g(orbit, 0, e1, 0) == 0.0);

  // Saddle rates: g(1, E^s) = b / |lambda_s|^2 = lambda_u / lambda_s.
  const OrbitSegment saddle =
      constant_orbit(Mat2C::diag(Complex{2.0, 0.0}, Complex{0.3, 0.0}), 6, 6);
  CHECK(log_g(saddle, 0, e2, 1) == doctest::Approx(std::log(2.0 / 0.3)));
}

TEST_CASE("log_g chain rule and duality on random orbits") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const OrbitSegment orbit = random_orbit(rng, 6, 6);
    const Direction xi = random_direction(rng);
    std::uniform_int_distribution<int> pick(-3, 3);
    const int m = pick(rng);
    const int n = pick(rng);
    if (std::abs(m) + std::abs(n) == 0) continue;
    const double total = log_g(orbit, 0, xi, m + n);
    const double part1 = log_g(orbit, 0, xi, m);
    const double part2 = log_g(orbit, m, push_direction(orbit, 0, xi, m), n);
    CHECK(std::abs(total - part1 - part2) <=
          1e-9 * std::max(1.0, std::abs(total)));

    const double fwd = log_g(orbit, 0, xi, n);
    const double bwd = log_g(orbit, n, push_direction(orbit, 0, xi, n), -n);
    CHECK(std::abs(fwd + bwd) <= 1e-9 * std::max(1.0, std::abs(fwd)));
  }
}

TEST_CASE("g_series") {
  const OrbitSegment id_orbit = constant_orbit(Mat2C::identity(), 4, 4);
  const LogMultiplierSeries zero = g_series(id_orbit, 0, e1, 4, 4);
  for (int n = -4; n <= 4; ++n) CHECK(std::abs(zero.at(n)) <= 1e-12);

  const OrbitSegment orbit =
      constant_orbit(Mat2C::diag(Complex{0.8, 0.0}, Complex{0.1, 0.0}), 8, 8);
  const LogMultiplierSeries series = g_series(orbit, 0, e1, 8, 8);
  CHECK(series.at(0) == 0.0);
  for (int n = 1; n <= 8; ++n) {
    CHECK(series.at(n) == doctest::Approx(n * std::log(0.125)).epsilon(1e-12));
    CHECK(series.at(-n) == doctest::Approx(n * std::log(8.0)).epsilon(1e-12));
  }

  // Chain-rule consistency across consecutive entries.
  std::mt19937_64 rng(23);
  const OrbitSegment rnd = random_orbit(rng, 5, 5);
  const Direction xi = random_direction(rng);
  const LogMultiplierSeries s = g_series(rnd, 0, xi, 5, 5);
  for (int n = -5; n < 5; ++n) {
    const Direction at_n = push_direction(rnd, 0, xi, n);
    const double step = log_g(rnd, n, at_n, 1);
    CHECK(std::abs(s.at(n + 1) - s.at(n) - step) <= 1e-9);
  }
}

TEST_CASE("lyapunov_estimate") {
  const OrbitSegment orbit =
      constant_orbit(Mat2C::diag(Complex{2.0, 0.0}, Complex{0.5, 0.0}), 0, 40);
  for (int N : {1, 5, 20, 40}) {
    const LyapunovEstimate est = lyapunov_estimate(orbit, 0, N);
    CHECK(est.lambda_plus == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(est.lambda_minus == doctest::Approx(std::log(0.5)).epsilon(1e-10));
  }

  const OrbitSegment id_orbit = constant_orbit(Mat2C::identity(), 0, 10);
  const LyapunovEstimate flat = lyapunov_estimate(id_orbit, 0, 10);
  CHECK(std::abs(flat.lambda_plus) <= 1e-12);
  CHECK(std::abs(flat.lambda_minus) <= 1e-12);

  std::mt19937_64 rng(24);
  const OrbitSegment rot = constant_orbit(critic::testing::random_su2(rng), 0, 10);
  const LyapunovEstimate iso = lyapunov_estimate(rot, 0, 10);
  CHECK(std::abs(iso.lambda_plus) <= 1e-10);
  CHECK(std::abs(iso.lambda_minus) <= 1e-10);

  // Sum rule on random orbits.
  for (int trial = 0; trial < 200; ++trial) {
    const OrbitSegment orbit2 = random_orbit(rng, 0, 12);
    const LyapunovEstimate est = lyapunov_estimate(orbit2, 0, 12);
    double log_det = 0.0;
    for (int k = 0; k < 12; ++k) log_det += orbit2.log_det(k);
    CHECK(std::abs(est.lambda_plus + est.lambda_minus - log_det / 12.0) <= 1e-9);
  }
}

TEST_CASE("log_g_in_metric reduces to log_g for the standard form") {
  std::mt19937_64 rng(25);
  const OrbitSegment orbit = random_orbit(rng, 5, 5);
  const Direction xi = random_direction(rng);
  for (int n = -5; n <= 5; ++n) {
    CHECK(log_g_in_metric(orbit, 0, xi, n, HermitianForm::standard()) ==
          doctest::Approx(log_g(orbit, 0, xi, n)).epsilon(1e-10));
  }
}

TEST_CASE("reversed orbit inverts the cocycle") {
  std::mt19937_64 rng(26);
  const OrbitSegment orbit = random_orbit(rng, 4, 4);
  const OrbitSegment rev = orbit.reversed();
  const Direction xi = random_direction(rng);
  for (int n = -3; n <= 3; ++n) {
    CHECK(log_g(rev, 0, xi, n) == doctest::Approx(log_g(orbit, 0, xi, -n)));
  }
  // Base points line up reversed.
  CHECK(rev.point(-orbit.n_max())[0] == orbit.point(orbit.n_max())[0]);
}
