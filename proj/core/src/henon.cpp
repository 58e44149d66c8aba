#include "critic/henon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critic {

namespace {

double inf_norm(const Point2C& z) {
  return std::max(std::abs(z[0]), std::abs(z[1]));
}

}  // namespace

HenonMap::HenonMap(std::vector<Complex> poly, Complex b)
    : poly_(std::move(poly)), b_(b) {
  if (poly_.size() < 3) throw std::invalid_argument("p must have degree >= 2");
  if (poly_.back() == Complex{}) {
    throw std::invalid_argument("leading coefficient must be nonzero");
  }
  if (b_ == Complex{}) throw std::invalid_argument("b must be nonzero");
  for (const Complex& c : poly_) {
    if (!is_finite(c)) throw std::invalid_argument("coefficients must be finite");
  }
}

Complex HenonMap::p(Complex y) const {
  Complex acc{};
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Complex HenonMap::dp(Complex y) const {
  Complex acc{};
  for (int i = static_cast<int>(poly_.size()) - 1; i >= 1; --i) {
    acc = acc * y + poly_[static_cast<size_t>(i)] * static_cast<double>(i);
  }
  return acc;
}

Point2C HenonMap::eval(const Point2C& z) const {
  return {z[1], p(z[1]) - b_ * z[0]};
}

Point2C HenonMap::inverse(const Point2C& z) const {
  return {(p(z[0]) - z[1]) / b_, z[0]};
}

Mat2C HenonMap::jacobian(const Point2C& z) const {
  return {Complex{}, Complex{1.0, 0.0}, -b_, dp(z[1])};
}

double escape_radius(const HenonMap& map) {
  const auto& c = map.poly();
  double R;
  const bool monic_pure_quadratic = map.degree() == 2 &&
                                    std::abs(c[2] - Complex{1.0, 0.0}) < 1e-12 &&
                                    std::abs(c[1]) < 1e-12;
  const double ab = std::abs(map.b());
  if (monic_pure_quadratic) {
    const double s = 1.0 + ab;
    R = 0.5 * (s + std::sqrt(s * s + 4.0 * std::abs(c[0])));
  } else {
    double coeff_sum = 0.0;
    for (size_t i = 0; i + 1 < c.size(); ++i) coeff_sum += std::abs(c[i]);
    R = 1.0 + ab + std::max(1.0, (coeff_sum + 1.0) / std::abs(c.back()));
  }

  // Ring validation: points just outside R must blow up within 100 steps,
  // forward for f and backward for f^{-1}.
  const int ring = 100;  // 100 x 100 = 10^4 sample points
  const double r = R * 1.0009765625;
  const double blow_up = std::max(100.0, 10.0 * R);
  for (int i = 0; i < ring; ++i) {
    const double tx = 2.0 * std::numbers::pi * i / ring;
    for (int j = 0; j < ring; ++j) {
      const double ty = 2.0 * std::numbers::pi * j / ring;
      const Point2C z0{std::polar(r, tx), std::polar(r, ty)};
      Point2C zf = z0, zb = z0;
      bool fwd = false, bwd = false;
      for (int it = 0; it < 100 && !(fwd && bwd); ++it) {
        if (!fwd) {
          zf = map.eval(zf);
          fwd = inf_norm(zf) > blow_up;
        }
        if (!bwd) {
          zb = map.inverse(zb);
          bwd = inf_norm(zb) > blow_up;
        }
      }
      if (!fwd || !bwd) {
        throw std::runtime_error(
            "escape radius validation failed; supply a manual radius");
      }
    }
  }
  return R;
}

std::vector<Point2C> sample_julia(const HenonMap& map, double R, int grid_n,
                                  int iters) {
  if (grid_n < 1) throw std::invalid_argument("grid_n must be >= 1");
  if (iters < 0) throw std::invalid_argument("iters must be >= 0");
  std::vector<Point2C> out;
  const double bound = 2.0 * R;
  for (int i = 0; i < grid_n; ++i) {
    const double x = grid_n == 1 ? 0.0 : -R + 2.0 * R * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double y = grid_n == 1 ? 0.0 : -R + 2.0 * R * j / (grid_n - 1);
      const Point2C z0{Complex{x, 0.0}, Complex{y, 0.0}};
      Point2C zf = z0, zb = z0;
      bool alive = true;
      for (int it = 0; it < iters && alive; ++it) {
        zf = map.eval(zf);
        zb = map.inverse(zb);
        alive = inf_norm(zf) <= bound && inf_norm(zb) <= bound;
      }
      if (alive) out.push_back(z0);
    }
  }
  return out;
}

OrbitSegment orbit_segment(const HenonMap& map, const Point2C& z0, int n_back,
                           int n_fwd, double bound, const std::string& id) {
  if (n_back < 0 || n_fwd < 0 || n_back + n_fwd < 1) {
    throw std::invalid_argument("orbit window must have at least one step");
  }
  const double limit = bound > 0.0 ? bound : 2.0 * escape_radius(map);

  std::vector<Point2C> points(static_cast<size_t>(n_back + n_fwd) + 1);
  points[static_cast<size_t>(n_back)] = z0;
  Point2C z = z0;
  for (int k = 1; k <= n_fwd; ++k) {
    z = map.eval(z);
    if (inf_norm(z) > limit) {
      throw std::runtime_error("orbit escapes window bound");
    }
    points[static_cast<size_t>(n_back + k)] = z;
  }
  z = z0;
  for (int k = 1; k <= n_back; ++k) {
    z = map.inverse(z);
    if (inf_norm(z) > limit) {
      throw std::runtime_error("orbit escapes window bound");
    }
    points[static_cast<size_t>(n_back - k)] = z;
  }

  std::vector<Mat2C> matrices;
  matrices.reserve(points.size() - 1);
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    matrices.push_back(map.jacobian(points[i]));
  }
  return OrbitSegment(id.empty() ? "henon-orbit" : id, -n_back, std::move(points),
                      std::move(matrices));
}

namespace {

struct EigenPair {
  Complex lambda_s, lambda_u;
  Direction dir_s, dir_u;
};

EigenPair eigen_2x2(const Mat2C& m) {
  const Complex tr = m.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0 * m.det());
  Complex l1 = 0.5 * (tr + disc);
  Complex l2 = 0.5 * (tr - disc);
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  const double scale = std::max(1.0, m.frobenius_norm());
  auto eigvec = [&](Complex lambda, const Vec2C& fallback) {
    const Vec2C u{m.b, lambda - m.a};
    const Vec2C w{lambda - m.d, m.c};
    const Vec2C& best = u.norm_sq() >= w.norm_sq() ? u : w;
    if (best.norm() < 1e-14 * scale) return Direction(fallback);  // scalar matrix
    return Direction(best);
  };
  EigenPair out;
  out.lambda_u = l1;
  out.lambda_s = l2;
  out.dir_u = eigvec(l1, Vec2C{Complex{1.0, 0.0}, Complex{}});
  out.dir_s = eigvec(l2, Vec2C{Complex{}, Complex{1.0, 0.0}});
  return out;
}

Mat2C period_jacobian(const HenonMap& map, const Point2C& z0, int period) {
  Mat2C acc = Mat2C::identity();
  Point2C z = z0;
  for (int k = 0; k < period; ++k) {
    acc = map.jacobian(z) * acc;
    z = map.eval(z);
  }
  return acc;
}

}  // namespace

std::vector<PeriodicPoint> newton_periodic(const HenonMap& map, int period,
                                           int seeds_per_axis, double tol) {
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (seeds_per_axis < 2) throw std::invalid_argument("need seeds_per_axis >= 2");
  const double R = escape_radius(map);
  const double span = 2.0 * R;

  std::vector<Point2C> seeds;
  // Complex diagonal x = y (fixed points of any generalized Henon map lie
  // there), gridded over re/im.
  for (int i = 0; i < seeds_per_axis; ++i) {
    const double re = -span + 2.0 * span * i / (seeds_per_axis - 1);
    for (int j = 0; j < seeds_per_axis; ++j) {
      const double im = -span + 2.0 * span * j / (seeds_per_axis - 1);
      const Complex s{re, im};
      seeds.push_back({s, s});
    }
  }
  if (period > 1) {
    for (int i = 0; i < seeds_per_axis; ++i) {
      const double x = -span + 2.0 * span * i / (seeds_per_axis - 1);
      for (int j = 0; j < seeds_per_axis; ++j) {
        const double y = -span + 2.0 * span * j / (seeds_per_axis - 1);
        seeds.push_back({Complex{x, 0.0}, Complex{y, 0.0}});
      }
    }
  }

  auto F = [&](const Point2C& z) {
    Point2C w = z;
    for (int k = 0; k < period; ++k) w = map.eval(w);
    return Point2C{w[0] - z[0], w[1] - z[1]};
  };

  std::vector<PeriodicPoint> found;
  for (const Point2C& seed : seeds) {
    Point2C z = seed;
    Point2C f = F(z);
    double res = inf_norm(f);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      if (res <= tol) {
        converged = true;
        break;
      }
      Mat2C J = period_jacobian(map, z, period);
      J.a -= 1.0;
      J.d -= 1.0;
      if (std::abs(J.det()) < 1e-14) break;
      const Mat2C Jinv = J.inverse();
      const Vec2C step = Jinv * Vec2C{f[0], f[1]};
      double damping = 1.0;
      Point2C z_new;
      Point2C f_new;
      double res_new = res;
      for (int h = 0; h < 8; ++h) {
        z_new = {z[0] - damping * step.v1, z[1] - damping * step.v2};
        f_new = F(z_new);
        res_new = inf_norm(f_new);
        if (res_new < res || !std::isfinite(res_new)) break;
        damping *= 0.5;
      }
      if (!std::isfinite(res_new) || res_new >= res) break;
      z = z_new;
      f = f_new;
      res = res_new;
    }
    if (!(converged || res <= tol)) continue;
    if (inf_norm(z) > 2.0 * R) continue;

    const bool duplicate =
        std::any_of(found.begin(), found.end(), [&](const PeriodicPoint& q) {
          return std::abs(q.point[0] - z[0]) < 1e-7 &&
                 std::abs(q.point[1] - z[1]) < 1e-7;
        });
    if (duplicate) continue;

    PeriodicPoint pp;
    pp.point = z;
    pp.period = period;
    pp.residual = res;
    const EigenPair eig = eigen_2x2(period_jacobian(map, z, period));
    pp.lambda_s = eig.lambda_s;
    pp.lambda_u = eig.lambda_u;
    pp.dir_s = eig.dir_s;
    pp.dir_u = eig.dir_u;
    found.push_back(std::move(pp));
  }

  std::sort(found.begin(), found.end(), [](const PeriodicPoint& a,
                                           const PeriodicPoint& b) {
    const auto key = [](const PeriodicPoint& p) {
      return std::array<double, 4>{p.point[0].real(), p.point[0].imag(),
                                   p.point[1].real(), p.point[1].imag()};
    };
    return key(a) < key(b);
  });
  return found;
}

OrbitSegment orbit_from_periodic(const HenonMap& map, const PeriodicPoint& pp,
                                 int n_back, int n_fwd) {
  if (n_back < 0 || n_fwd < 0 || n_back + n_fwd < 1) {
    throw std::invalid_argument("orbit window must have at least one step");
  }
  // The cycle is computed once; the window repeats it exactly, so there is
  // no numeric drift over long windows.
  std::vector<Point2C> cycle(static_cast<size_t>(pp.period));
  cycle[0] = pp.point;
  for (int k = 1; k < pp.period; ++k) cycle[static_cast<size_t>(k)] = map.eval(cycle[static_cast<size_t>(k - 1)]);

  auto at = [&](int n) {
    const int m = ((n % pp.period) + pp.period) % pp.period;
    return cycle[static_cast<size_t>(m)];
  };
  std::vector<Point2C> points;
  std::vector<Mat2C> matrices;
  for (int n = -n_back; n <= n_fwd; ++n) {
    points.push_back(at(n));
    if (n < n_fwd) matrices.push_back(map.jacobian(at(n)));
  }
  return OrbitSegment("periodic-p" + std::to_string(pp.period), -n_back,
                      std::move(points), std::move(matrices));
}

SaddleRateReport saddle_rate_check(const HenonMap& map, const PeriodicPoint& pp,
                                   int n_max) {
  if (!pp.is_saddle()) throw std::invalid_argument("periodic point is not a saddle");
  SaddleRateReport report;
  if (n_max < 1) return report;

  const int p = pp.period;
  const OrbitSegment orbit = orbit_from_periodic(map, pp, n_max, n_max);
  const double det_p = std::pow(std::abs(map.b()), p);
  const double back_rate = std::log(std::norm(pp.lambda_u) / det_p) / p;
  const double fwd_rate =
      std::log(std::abs(pp.lambda_u) / std::abs(pp.lambda_s)) / p;

  // The eigen-sections over the cycle are invariant, but E^u is repelling
  // for the backward projective dynamics (and E^s for the forward one), so
  // a pushed representative slides off at rate (lu/ls)^n. Re-anchor the
  // direction at every cycle point instead of pushing it.
  std::vector<EigenPair> sections(static_cast<size_t>(p));
  {
    Point2C z = pp.point;
    for (int j = 0; j < p; ++j) {
      sections[static_cast<size_t>(j)] = eigen_2x2(period_jacobian(map, z, p));
      z = map.eval(z);
    }
  }
  auto section_at = [&](int index) -> const EigenPair& {
    return sections[static_cast<size_t>(((index % p) + p) % p)];
  };

  double acc_back = 0.0;
  double acc_fwd = 0.0;
  std::vector<double> back_values, fwd_values;
  for (int k = 1; k <= n_max; ++k) {
    acc_back += log_g(orbit, -k + 1, section_at(-k + 1).dir_u, -1);
    back_values.push_back(acc_back);
    acc_fwd += log_g(orbit, k - 1, section_at(k - 1).dir_s, 1);
    fwd_values.push_back(acc_fwd);
  }

  for (int n = p; n <= n_max; n += p) {
    SaddleRateEntry e;
    e.n = n;
    e.expected_back = n * back_rate;
    e.actual_back = back_values[static_cast<size_t>(n - 1)];
    e.expected_fwd = n * fwd_rate;
    e.actual_fwd = fwd_values[static_cast<size_t>(n - 1)];
    const double scale = std::max({1.0, std::abs(e.expected_back),
                                   std::abs(e.expected_fwd)});
    const double err = std::max(std::abs(e.actual_back - e.expected_back),
                                std::abs(e.actual_fwd - e.expected_fwd)) /
                       scale;
    report.max_rel_err = std::max(report.max_rel_err, err);
    if (err > 1e-8 * n) report.pass = false;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace critic
