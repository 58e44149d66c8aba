#pragma once

#include <random>

#include "critic/orbit.hpp"

namespace critic::testing {

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  return {normal(rng), normal(rng)};
}

inline Vec2C random_unit_vector(std::mt19937_64& rng) {
  Vec2C v{random_complex(rng), random_complex(rng)};
  while (v.norm() < 1e-6) v = {random_complex(rng), random_complex(rng)};
  return v / v.norm();
}

inline Direction random_direction(std::mt19937_64& rng) {
  return Direction(random_unit_vector(rng));
}

inline SpherePoint random_sphere_point(std::mt19937_64& rng) {
  return random_direction(rng).chart();
}

/// Invertible matrix with |det| bounded away from zero.
inline Mat2C random_invertible(std::mt19937_64& rng, double scale = 1.0) {
  while (true) {
    Mat2C m{random_complex(rng, scale), random_complex(rng, scale),
            random_complex(rng, scale), random_complex(rng, scale)};
    if (std::abs(m.det()) > 0.1 * scale * scale) return m;
  }
}

inline Mat2C random_su2(std::mt19937_64& rng) {
  const Vec2C v = random_unit_vector(rng);
  return {v.v1, v.v2, -std::conj(v.v2), std::conj(v.v1)};
}

/// Mildly conditioned matrix U diag(e^u, e^-u) V with |u| <= log_cond/2.
inline Mat2C random_mild(std::mt19937_64& rng, double log_cond = 0.4) {
  std::uniform_real_distribution<double> uni(-0.5 * log_cond, 0.5 * log_cond);
  const double u = uni(rng);
  return random_su2(rng) *
         Mat2C::diag(Complex{std::exp(u), 0.0}, Complex{std::exp(-u), 0.0}) *
         random_su2(rng);
}

inline OrbitSegment random_orbit(std::mt19937_64& rng, int n_back, int n_fwd,
                                 double scale = 1.0) {
  std::vector<BasePoint> points;
  std::vector<Mat2C> matrices;
  for (int n = -n_back; n <= n_fwd; ++n) {
    points.push_back({Complex{static_cast<double>(n), 0.0}, Complex{}});
    if (n < n_fwd) matrices.push_back(random_invertible(rng, scale));
  }
  return OrbitSegment("random", -n_back, std::move(points), std::move(matrices));
}

inline OrbitSegment random_mild_orbit(std::mt19937_64& rng, int n_back, int n_fwd,
                                      double log_cond = 0.4) {
  std::vector<BasePoint> points;
  std::vector<Mat2C> matrices;
  for (int n = -n_back; n <= n_fwd; ++n) {
    points.push_back({Complex{static_cast<double>(n), 0.0}, Complex{}});
    if (n < n_fwd) matrices.push_back(random_mild(rng, log_cond));
  }
  return OrbitSegment("random-mild", -n_back, std::move(points), std::move(matrices));
}

/// Constant-matrix orbit.
inline OrbitSegment constant_orbit(const Mat2C& m, int n_back, int n_fwd,
                                   const std::string& id = "constant") {
  std::vector<BasePoint> points;
  std::vector<Mat2C> matrices;
  for (int n = -n_back; n <= n_fwd; ++n) {
    points.push_back({Complex{static_cast<double>(n), 0.0}, Complex{}});
    if (n < n_fwd) matrices.push_back(m);
  }
  return OrbitSegment(id, -n_back, std::move(points), std::move(matrices));
}

}  // namespace critic::testing
