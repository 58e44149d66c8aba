#pragma once

#include <optional>
#include <vector>

#include "critic/complexmath.hpp"

namespace critic {

/// A point of the Riemann sphere in chart coordinates z = v1/v2, with
/// infinity standing for [1:0].
struct SpherePoint {
  Complex z{0.0, 0.0};
  bool at_infinity{false};

  constexpr SpherePoint() = default;
  constexpr SpherePoint(Complex chart) : z(chart) {}

  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.at_infinity = true;
    return p;
  }

  bool operator==(const SpherePoint&) const = default;
};

/// A projective direction [v1 : v2], stored as a canonical unit
/// representative: the component of largest modulus is made real and
/// non-negative (ties broken toward v1). Two directions are considered
/// equal when their canonical representatives coincide within 1e-9.
class Direction {
 public:
  Direction() : rep_{Complex{0.0, 0.0}, Complex{1.0, 0.0}} {}
  explicit Direction(const Vec2C& v);
  Direction(Complex v1, Complex v2) : Direction(Vec2C{v1, v2}) {}

  static Direction from_chart(const SpherePoint& p);

  const Vec2C& rep() const { return rep_; }
  SpherePoint chart() const;

  /// Representative-wise comparison after canonicalization.
  bool almost_equal(const Direction& other, double tol = 1e-9) const;

 private:
  Vec2C rep_;
};

/// Antipodal direction; orthogonal representative, chart -1/conj(z).
Direction antipode(const Direction& d);

/// Moebius action of an invertible matrix on the sphere, [v] -> [Av].
/// Throws std::domain_error("non-invertible fiber map") on singular input.
SpherePoint mobius_apply(const Mat2C& m, const SpherePoint& z);
Direction mobius_apply(const Mat2C& m, const Direction& d);

/// Spherical norm of the Moebius derivative at z: |det A| / |A v_z|^2 for a
/// unit representative v_z. Equals |M'(z)| (1+|z|^2)/(1+|M(z)|^2) on the
/// chart.
double multiplier_norm(const Mat2C& m, const SpherePoint& z);
double multiplier_norm(const Mat2C& m, const Direction& d);

/// Chart-side evaluation |M'(z)| (1+|z|^2)/(1+|M(z)|^2); finite-chart points
/// only, used as an independent cross-check of multiplier_norm.
std::optional<double> multiplier_norm_chart(const Mat2C& m, const SpherePoint& z);

/// Distance on the sphere realized as the doubled Fubini-Study angle,
/// 2*acos(|<u1,u2>|) for unit representatives. Range [0, pi]; pi at
/// antipodes.
double spherical_distance(const SpherePoint& a, const SpherePoint& b);
double spherical_distance(const Direction& a, const Direction& b);

/// sin of the angle between two nonzero vectors: |det[u v]| / (|u||v|).
/// Throws std::domain_error on a zero vector.
double sin_angle(const Vec2C& u, const Vec2C& v);

/// The special-unitary matrix whose Moebius action sends xi to chart 0.
Mat2C isometry_to_zero(const Direction& xi);

/// A positive-definite hermitian form [[h11, h12], [conj(h12), h22]].
struct HermitianForm {
  double h11{1.0};
  Complex h12{0.0, 0.0};
  double h22{1.0};

  static constexpr HermitianForm standard() { return {}; }
  static HermitianForm diagonal(double x, double y) { return {x, Complex{}, y}; }

  bool positive_definite() const {
    return h11 > 0.0 && h22 > 0.0 && h11 * h22 - std::norm(h12) > 0.0;
  }
  double norm_sq(const Vec2C& v) const {
    return h11 * std::norm(v.v1) + h22 * std::norm(v.v2) +
           2.0 * std::real(std::conj(v.v1) * h12 * v.v2);
  }
  /// Eigenvalue bounds, for the norm-equivalence constant
  /// alpha = sqrt(lam_max/lam_min).
  double lambda_min() const;
  double lambda_max() const;
  double alpha() const { return std::sqrt(lambda_max() / lambda_min()); }
};

/// Multiplier norm in the spherical metric induced by H:
/// |det A| * |v|_H^2 / |A v|_H^2. Reduces to multiplier_norm for the
/// standard form. Throws std::domain_error unless H is positive definite.
double multiplier_norm_in_metric(const Mat2C& m, const SpherePoint& z,
                                 const HermitianForm& h);
double multiplier_norm_in_metric(const Mat2C& m, const Direction& d,
                                 const HermitianForm& h);

/// Deterministic quasi-uniform sample of n directions, a Fibonacci lattice
/// on S^2 mapped to the sphere by the half-angle spinor chart.
std::vector<Direction> fibonacci_directions(int n);

}  // namespace critic
