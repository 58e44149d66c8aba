#pragma once

#include <array>
#include <string>
#include <vector>

#include "critic/sphere.hpp"

namespace critic {

/// Default log-domain slack for a horizon-N check.
inline double default_slack(int horizon) {
  return 1e-9 * static_cast<double>(horizon < 0 ? -horizon : horizon) + 1e-12;
}

using BasePoint = std::array<Complex, 2>;

/// A finite base-orbit window with one invertible matrix per step.
/// points are indexed n_min..n_max; matrices[n] maps fiber n to fiber n+1
/// and is indexed n_min..n_max-1. Immutable after construction.
class OrbitSegment {
 public:
  OrbitSegment(std::string id, int n_min, std::vector<BasePoint> points,
               std::vector<Mat2C> matrices);

  const std::string& id() const { return id_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_min_ + static_cast<int>(points_.size()) - 1; }

  const BasePoint& point(int n) const { return points_.at(offset(n, 0)); }
  const Mat2C& matrix(int n) const { return matrices_.at(offset(n, 1)); }
  /// Precomputed inverse of matrix(n).
  const Mat2C& matrix_inv(int n) const { return inverses_.at(offset(n, 1)); }
  /// log |det matrix(n)|.
  double log_det(int n) const { return log_dets_.at(offset(n, 1)); }

  bool contains(int n) const { return n >= n_min() && n <= n_max(); }
  /// Whether the closed window [lo, hi] lies inside the orbit.
  bool contains_window(int lo, int hi) const {
    return lo <= hi && contains(lo) && contains(hi);
  }

  /// The same orbit read under the inverse cocycle: index m of the result is
  /// index -m here, with matrices inverted. Used for critical values.
  OrbitSegment reversed() const;

 private:
  size_t offset(int n, int end_slack) const;

  std::string id_;
  int n_min_;
  std::vector<BasePoint> points_;
  std::vector<Mat2C> matrices_;
  std::vector<Mat2C> inverses_;
  std::vector<double> log_dets_;
};

/// n-step iterate at `index` as a unit-Frobenius-scaled matrix plus the log
/// of the factored-out scale: A^n = exp(log_scale) * matrix. n = 0 yields
/// (identity, 0); n < 0 composes inverses down the orbit. Throws
/// std::out_of_range when the window [index, index+n] leaves the orbit.
struct ScaledMat {
  Mat2C matrix;
  double log_scale{0.0};
};
ScaledMat compose(const OrbitSegment& orbit, int index, int n);

/// M^n xi: the direction at fiber index+n reached from xi at fiber index,
/// renormalized every step.
Direction push_direction(const OrbitSegment& orbit, int index,
                         const Direction& xi, int n);

/// log g(n, xi) at `index`: per-step accumulation of
/// log|det A| - 2 log|A v| with the direction representative renormalized at
/// every step. log_g(..., 0) = 0.
double log_g(const OrbitSegment& orbit, int index, const Direction& xi, int n);

/// Same accumulation in the spherical metric induced by H.
double log_g_in_metric(const OrbitSegment& orbit, int index, const Direction& xi,
                       int n, const HermitianForm& h);

/// Window of log g values around a base index.
/// values[n] = log g(n, xi) for n in [-n_back, n_fwd]; values[0] = 0 and the
/// chain rule log g(n+m, xi) = log g(m, xi) + log g(n, M^m xi) holds across
/// consecutive entries. Note the iterate in the chain rule sits at the inner
/// factor's base point: compositions accumulate as g(n, M^m xi) * g(m, xi).
struct LogMultiplierSeries {
  int base_index{0};
  Direction direction;
  int n_back{0};
  int n_fwd{0};
  std::vector<double> values;  // values[i] = log g(i - n_back, xi)

  double at(int n) const { return values.at(static_cast<size_t>(n + n_back)); }
};
LogMultiplierSeries g_series(const OrbitSegment& orbit, int index,
                             const Direction& xi, int n_back, int n_fwd);

/// Finite-N Lyapunov proxy: (lambda_minus, lambda_plus) from the singular
/// values of the scaled N-step iterate. Satisfies
/// lambda_minus + lambda_plus = (1/N) log |det A^N|.
struct LyapunovEstimate {
  double lambda_minus{0.0};
  double lambda_plus{0.0};
};
LyapunovEstimate lyapunov_estimate(const OrbitSegment& orbit, int index, int N);

}  // namespace critic
