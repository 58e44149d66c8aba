#include "critic/orbit.hpp"

#include <cmath>
#include <stdexcept>

namespace critic {

namespace {
constexpr double kDetFloor = 1e-300;
}

OrbitSegment::OrbitSegment(std::string id, int n_min,
                           std::vector<BasePoint> points,
                           std::vector<Mat2C> matrices)
    : id_(std::move(id)),
      n_min_(n_min),
      points_(std::move(points)),
      matrices_(std::move(matrices)) {
  if (points_.empty() || matrices_.size() + 1 != points_.size()) {
    throw std::invalid_argument("orbit lengths inconsistent");
  }
  if (!(n_min_ <= 0 && 0 <= n_max())) {
    throw std::invalid_argument("orbit window must contain index 0");
  }
  inverses_.reserve(matrices_.size());
  log_dets_.reserve(matrices_.size());
  for (const Mat2C& m : matrices_) {
    if (!m.is_finite() || !(std::abs(m.det()) > kDetFloor)) {
      throw std::invalid_argument("degenerate fiber matrix (|det| <= 1e-300)");
    }
    inverses_.push_back(m.inverse());
    log_dets_.push_back(std::log(std::abs(m.det())));
  }
}

size_t OrbitSegment::offset(int n, int end_slack) const {
  const int rel = n - n_min_;
  const int count = static_cast<int>(points_.size()) - end_slack;
  if (rel < 0 || rel >= count) {
    throw std::out_of_range("orbit index out of range");
  }
  return static_cast<size_t>(rel);
}

OrbitSegment OrbitSegment::reversed() const {
  const int m_min = -n_max();
  std::vector<BasePoint> pts;
  pts.reserve(points_.size());
  for (int m = m_min; m <= -n_min_; ++m) pts.push_back(point(-m));
  std::vector<Mat2C> mats;
  mats.reserve(matrices_.size());
  // Step m of the reversed orbit carries base point f^{-m} and the matrix
  // A^{-1} at f^{-m-1}.
  for (int m = m_min; m < -n_min_; ++m) mats.push_back(matrix_inv(-m - 1));
  return OrbitSegment(id_ + "#rev", m_min, std::move(pts), std::move(mats));
}

ScaledMat compose(const OrbitSegment& orbit, int index, int n) {
  const int lo = std::min(index, index + n);
  const int hi = std::max(index, index + n);
  if (!orbit.contains_window(lo, hi)) {
    throw std::out_of_range("compose window out of range");
  }
  ScaledMat out;
  if (n == 0) return out;
  Mat2C acc = Mat2C::identity();
  double log_scale = 0.0;
  if (n > 0) {
    for (int k = 0; k < n; ++k) {
      acc = orbit.matrix(index + k) * acc;
      const double s = acc.frobenius_norm();
      acc = acc / s;
      log_scale += std::log(s);
    }
  } else {
    for (int k = 1; k <= -n; ++k) {
      acc = orbit.matrix_inv(index - k) * acc;
      const double s = acc.frobenius_norm();
      acc = acc / s;
      log_scale += std::log(s);
    }
  }
  out.matrix = acc;
  out.log_scale = log_scale;
  return out;
}

Direction push_direction(const OrbitSegment& orbit, int index,
                         const Direction& xi, int n) {
  const int lo = std::min(index, index + n);
  const int hi = std::max(index, index + n);
  if (!orbit.contains_window(lo, hi)) {
    throw std::out_of_range("push window out of range");
  }
  Vec2C v = xi.rep();
  if (n > 0) {
    for (int k = 0; k < n; ++k) {
      v = orbit.matrix(index + k) * v;
      v = v / v.norm();
    }
  } else {
    for (int k = 1; k <= -n; ++k) {
      v = orbit.matrix_inv(index - k) * v;
      v = v / v.norm();
    }
  }
  return Direction(v);
}

double log_g(const OrbitSegment& orbit, int index, const Direction& xi, int n) {
  const int lo = std::min(index, index + n);
  const int hi = std::max(index, index + n);
  if (!orbit.contains_window(lo, hi)) {
    throw std::out_of_range("log_g window out of range");
  }
  double acc = 0.0;
  Vec2C v = xi.rep();
  if (n > 0) {
    for (int k = 0; k < n; ++k) {
      v = orbit.matrix(index + k) * v;
      const double norm = v.norm();
      acc += orbit.log_det(index + k) - 2.0 * std::log(norm);
      v = v / norm;
    }
  } else {
    for (int k = 1; k <= -n; ++k) {
      v = orbit.matrix_inv(index - k) * v;
      const double norm = v.norm();
      acc += -orbit.log_det(index - k) - 2.0 * std::log(norm);
      v = v / norm;
    }
  }
  return acc;
}

double log_g_in_metric(const OrbitSegment& orbit, int index, const Direction& xi,
                       int n, const HermitianForm& h) {
  if (!h.positive_definite()) {
    throw std::domain_error("hermitian form is not positive definite");
  }
  const int lo = std::min(index, index + n);
  const int hi = std::max(index, index + n);
  if (!orbit.contains_window(lo, hi)) {
    throw std::out_of_range("log_g window out of range");
  }
  double acc = 0.0;
  Vec2C v = xi.rep();
  if (n > 0) {
    for (int k = 0; k < n; ++k) {
      const double before = h.norm_sq(v);
      v = orbit.matrix(index + k) * v;
      const double after = h.norm_sq(v);
      acc += orbit.log_det(index + k) + std::log(before) - std::log(after);
      v = v / v.norm();
    }
  } else {
    for (int k = 1; k <= -n; ++k) {
      const double before = h.norm_sq(v);
      v = orbit.matrix_inv(index - k) * v;
      const double after = h.norm_sq(v);
      acc += -orbit.log_det(index - k) + std::log(before) - std::log(after);
      v = v / v.norm();
    }
  }
  return acc;
}

LogMultiplierSeries g_series(const OrbitSegment& orbit, int index,
                             const Direction& xi, int n_back, int n_fwd) {
  if (n_back < 0 || n_fwd < 0) {
    throw std::invalid_argument("g_series extents must be non-negative");
  }
  if (!orbit.contains_window(index - n_back, index + n_fwd)) {
    throw std::out_of_range("g_series window out of range");
  }
  LogMultiplierSeries series;
  series.base_index = index;
  series.direction = xi;
  series.n_back = n_back;
  series.n_fwd = n_fwd;
  series.values.assign(static_cast<size_t>(n_back + n_fwd) + 1, 0.0);

  double acc = 0.0;
  Vec2C v = xi.rep();
  for (int k = 1; k <= n_back; ++k) {
    v = orbit.matrix_inv(index - k) * v;
    const double norm = v.norm();
    acc += -orbit.log_det(index - k) - 2.0 * std::log(norm);
    v = v / norm;
    series.values[static_cast<size_t>(n_back - k)] = acc;
  }
  acc = 0.0;
  v = xi.rep();
  for (int k = 1; k <= n_fwd; ++k) {
    v = orbit.matrix(index + k - 1) * v;
    const double norm = v.norm();
    acc += orbit.log_det(index + k - 1) - 2.0 * std::log(norm);
    v = v / norm;
    series.values[static_cast<size_t>(n_back + k)] = acc;
  }
  return series;
}

LyapunovEstimate lyapunov_estimate(const OrbitSegment& orbit, int index, int N) {
  if (N < 1) throw std::invalid_argument("lyapunov horizon must be >= 1");
  const ScaledMat it = compose(orbit, index, N);
  const Svd2 sv = svd2(it.matrix);
  // The scaled matrix's determinant cancels badly when ill-conditioned;
  // sigma_min comes from the exact per-step identity
  // log sigma_max + log sigma_min = log|det A^N| = sum of step log-dets.
  double sum_log_det = 0.0;
  for (int k = 0; k < N; ++k) sum_log_det += orbit.log_det(index + k);
  LyapunovEstimate est;
  est.lambda_plus = (it.log_scale + std::log(sv.sigma_max)) / static_cast<double>(N);
  est.lambda_minus = sum_log_det / static_cast<double>(N) - est.lambda_plus;
  return est;
}

}  // namespace critic
