#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "critic/orbit.hpp"

namespace critic {

using Point2C = std::array<Complex, 2>;

/// Generalized Henon map f(x, y) = (y, p(y) - b x), deg p >= 2, b != 0.
/// |det Df| = |b| everywhere.
class HenonMap {
 public:
  /// poly holds the coefficients of p in ascending order, p(y) = sum c_i y^i.
  HenonMap(std::vector<Complex> poly, Complex b);

  static HenonMap quadratic(Complex c, Complex b) {
    return HenonMap({c, Complex{}, Complex{1.0, 0.0}}, b);
  }

  const std::vector<Complex>& poly() const { return poly_; }
  Complex b() const { return b_; }
  int degree() const { return static_cast<int>(poly_.size()) - 1; }

  Complex p(Complex y) const;
  Complex dp(Complex y) const;

  Point2C eval(const Point2C& z) const;
  Point2C inverse(const Point2C& z) const;
  Mat2C jacobian(const Point2C& z) const;

 private:
  std::vector<Complex> poly_;
  Complex b_;
};

/// Filtration radius: ||z||_inf > R implies forward escape for f and
/// backward escape for f^{-1}. The quadratic monic bound
/// (1 + |b| + sqrt((1+|b|)^2 + 4|c|)) / 2 is used when it applies, a
/// coefficient-sum bound otherwise; either is validated on a 10^4-point
/// ring sample over 100 iterations. Throws std::runtime_error asking for a
/// manual radius when validation fails.
double escape_radius(const HenonMap& map);

/// Grid points of the real bidisk [-R, R]^2 whose forward AND backward
/// orbits stay ||.||_inf <= 2R for `iters` steps, in row-major order.
/// iters = 0 returns the whole grid. May be empty at strongly hyperbolic
/// parameters: survivors must lie within (unstable rate)^{-iters} of J,
/// far below any realistic grid spacing.
std::vector<Point2C> sample_julia(const HenonMap& map, double R, int grid_n,
                                  int iters);

/// Orbit segment through z0 with the Jacobian cocycle; throws
/// std::runtime_error if the orbit leaves ||.||_inf <= bound
/// (default 2 * escape_radius).
OrbitSegment orbit_segment(const HenonMap& map, const Point2C& z0, int n_back,
                           int n_fwd, double bound = -1.0,
                           const std::string& id = "");

struct PeriodicPoint {
  Point2C point;
  int period{1};
  Complex lambda_s;  // |lambda_s| <= |lambda_u|
  Complex lambda_u;
  Direction dir_s;
  Direction dir_u;
  double residual{0.0};

  bool is_saddle() const {
    return std::abs(lambda_s) < 1.0 && std::abs(lambda_u) > 1.0;
  }
  bool is_sink() const { return std::abs(lambda_u) < 1.0; }
};

/// Newton solve of f^period(z) = z from deterministic seed grids (complex
/// diagonal x = y, plus a real (x, y) grid for period > 1); results deduped
/// within 1e-7 and ordered by coordinates. Seeds that fail to converge are
/// dropped; an empty result means no convergence anywhere.
std::vector<PeriodicPoint> newton_periodic(const HenonMap& map, int period,
                                           int seeds_per_axis = 32,
                                           double tol = 1e-12);

/// Exactly periodic orbit segment through pp (points repeat the cycle, no
/// numeric drift).
OrbitSegment orbit_from_periodic(const HenonMap& map, const PeriodicPoint& pp,
                                 int n_back, int n_fwd);

/// Closed-form saddle rates: along the cycle of a periodic saddle,
/// g(-n, E^u) and g(n, E^s) follow (|lambda_u|^2 / |det Df^p|)^{n/p} at
/// multiples n of the period. Entries record expected vs cocycle-evaluated
/// values.
struct SaddleRateEntry {
  int n{0};
  double expected_back{0.0};
  double actual_back{0.0};
  double expected_fwd{0.0};
  double actual_fwd{0.0};
};
struct SaddleRateReport {
  std::vector<SaddleRateEntry> entries;
  double max_rel_err{0.0};
  bool pass{true};
};
SaddleRateReport saddle_rate_check(const HenonMap& map, const PeriodicPoint& pp,
                                   int n_max);

}  // namespace critic
