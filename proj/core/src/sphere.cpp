#include "critic/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critic {

namespace {

constexpr double kDetFloor = 1e-300;

void require_invertible(const Mat2C& m) {
  if (!(std::abs(m.det()) > kDetFloor)) {
    throw std::domain_error("non-invertible fiber map");
  }
}

}  // namespace

Direction::Direction(const Vec2C& v) {
  if (v.is_zero() || !(is_finite(v.v1) && is_finite(v.v2))) {
    throw std::domain_error("projective representative must be nonzero and finite");
  }
  Vec2C u = v / v.norm();
  // Canonical phase: the component of largest modulus becomes real
  // non-negative; ties go to v1.
  const Complex lead = std::abs(u.v1) >= std::abs(u.v2) ? u.v1 : u.v2;
  const double mag = std::abs(lead);
  u = u * (std::conj(lead) / mag);
  rep_ = u / u.norm();  // second normalization tightens rounding drift
}

Direction Direction::from_chart(const SpherePoint& p) {
  if (p.at_infinity) return Direction(Complex{1.0, 0.0}, Complex{0.0, 0.0});
  return Direction(p.z, Complex{1.0, 0.0});
}

SpherePoint Direction::chart() const {
  if (rep_.v2 == Complex{}) return SpherePoint::infinity();
  return SpherePoint(rep_.v1 / rep_.v2);
}

bool Direction::almost_equal(const Direction& other, double tol) const {
  return std::abs(rep_.v1 - other.rep_.v1) <= tol &&
         std::abs(rep_.v2 - other.rep_.v2) <= tol;
}

Direction antipode(const Direction& d) {
  const Vec2C& v = d.rep();
  return Direction(-std::conj(v.v2), std::conj(v.v1));
}

SpherePoint mobius_apply(const Mat2C& m, const SpherePoint& z) {
  require_invertible(m);
  if (z.at_infinity) {
    if (m.c == Complex{}) return SpherePoint::infinity();
    return SpherePoint(m.a / m.c);
  }
  const Complex num = m.a * z.z + m.b;
  const Complex den = m.c * z.z + m.d;
  if (den == Complex{}) return SpherePoint::infinity();
  return SpherePoint(num / den);
}

Direction mobius_apply(const Mat2C& m, const Direction& d) {
  require_invertible(m);
  return Direction(m * d.rep());
}

double multiplier_norm(const Mat2C& m, const Direction& d) {
  require_invertible(m);
  const Vec2C image = m * d.rep();
  return std::abs(m.det()) / image.norm_sq();
}

double multiplier_norm(const Mat2C& m, const SpherePoint& z) {
  return multiplier_norm(m, Direction::from_chart(z));
}

std::optional<double> multiplier_norm_chart(const Mat2C& m, const SpherePoint& z) {
  require_invertible(m);
  if (z.at_infinity) return std::nullopt;
  const Complex den = m.c * z.z + m.d;
  if (den == Complex{}) return std::nullopt;
  const Complex image = (m.a * z.z + m.b) / den;
  const double deriv = std::abs(m.det()) / std::norm(den);
  return deriv * (1.0 + std::norm(z.z)) / (1.0 + std::norm(image));
}

double spherical_distance(const Direction& a, const Direction& b) {
  // Doubled Fubini-Study angle. For unit u, v the Lagrange identity gives
  // |<u,v>|^2 + |det[u v]|^2 = 1, so atan2 recovers the angle accurately at
  // both ends of [0, pi/2] (acos alone floors small distances near 2e-8).
  const Vec2C& u = a.rep();
  const Vec2C& v = b.rep();
  const double cosine = std::abs(inner(u, v));
  const double sine = std::abs(u.v1 * v.v2 - u.v2 * v.v1);
  return 2.0 * std::atan2(sine, cosine);
}

double spherical_distance(const SpherePoint& a, const SpherePoint& b) {
  return spherical_distance(Direction::from_chart(a), Direction::from_chart(b));
}

double sin_angle(const Vec2C& u, const Vec2C& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("sin_angle of zero vector");
  const double area = std::abs(u.v1 * v.v2 - u.v2 * v.v1);
  return std::clamp(area / (nu * nv), 0.0, 1.0);
}

Mat2C isometry_to_zero(const Direction& xi) {
  // Inverse of the unitary [[conj(v2), v1], [-conj(v1), v2]] that carries
  // chart 0 to xi; special unitary for a unit representative.
  const Vec2C& v = xi.rep();
  return {v.v2, -v.v1, std::conj(v.v1), std::conj(v.v2)};
}

double HermitianForm::lambda_min() const {
  const double half_tr = 0.5 * (h11 + h22);
  const double disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + std::norm(h12));
  return half_tr - disc;
}

double HermitianForm::lambda_max() const {
  const double half_tr = 0.5 * (h11 + h22);
  const double disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + std::norm(h12));
  return half_tr + disc;
}

double multiplier_norm_in_metric(const Mat2C& m, const Direction& d,
                                 const HermitianForm& h) {
  if (!h.positive_definite()) {
    throw std::domain_error("hermitian form is not positive definite");
  }
  require_invertible(m);
  const Vec2C& v = d.rep();
  const Vec2C image = m * v;
  return std::abs(m.det()) * h.norm_sq(v) / h.norm_sq(image);
}

double multiplier_norm_in_metric(const Mat2C& m, const SpherePoint& z,
                                 const HermitianForm& h) {
  return multiplier_norm_in_metric(m, Direction::from_chart(z), h);
}

std::vector<Direction> fibonacci_directions(int n) {
  std::vector<Direction> out;
  out.reserve(static_cast<size_t>(std::max(0, n)));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double cos_theta = 1.0 - 2.0 * t;        // z of the S^2 point
    const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / golden;
    // Half-angle spinor: (cos(theta/2), e^{i phi} sin(theta/2)).
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    out.emplace_back(Complex{ch, 0.0}, std::polar(sh, phi));
  }
  return out;
}

}  // namespace critic
