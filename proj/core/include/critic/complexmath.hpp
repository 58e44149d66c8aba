#pragma once

#include <complex>
#include <stdexcept>

namespace critic {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A vector of the fiber C^2.
struct Vec2C {
  Complex v1{0.0, 0.0};
  Complex v2{0.0, 0.0};

  constexpr Vec2C() = default;
  constexpr Vec2C(Complex a, Complex b) : v1(a), v2(b) {}

  double norm_sq() const { return std::norm(v1) + std::norm(v2); }
  double norm() const { return std::sqrt(norm_sq()); }
  bool is_zero() const { return v1 == Complex{} && v2 == Complex{}; }

  Vec2C operator*(Complex s) const { return {v1 * s, v2 * s}; }
  Vec2C operator/(double s) const { return {v1 / s, v2 / s}; }
  Vec2C operator+(const Vec2C& o) const { return {v1 + o.v1, v2 + o.v2}; }
  Vec2C operator-(const Vec2C& o) const { return {v1 - o.v1, v2 - o.v2}; }
};

/// Hermitian inner product, conjugate-linear in the first slot.
inline Complex inner(const Vec2C& u, const Vec2C& v) {
  return std::conj(u.v1) * v.v1 + std::conj(u.v2) * v.v2;
}

/// 2x2 complex matrix, row-major: [[a, b], [c, d]].
struct Mat2C {
  Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  constexpr Mat2C() = default;
  constexpr Mat2C(Complex a_, Complex b_, Complex c_, Complex d_)
      : a(a_), b(b_), c(c_), d(d_) {}

  static constexpr Mat2C identity() { return {}; }
  static constexpr Mat2C diag(Complex x, Complex y) {
    return {x, Complex{}, Complex{}, y};
  }

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }

  Vec2C operator*(const Vec2C& v) const {
    return {a * v.v1 + b * v.v2, c * v.v1 + d * v.v2};
  }
  Mat2C operator*(const Mat2C& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d,
            c * m.a + d * m.c, c * m.b + d * m.d};
  }
  Mat2C operator*(Complex s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2C operator/(double s) const { return {a / s, b / s, c / s, d / s}; }

  Mat2C inverse() const {
    const Complex delta = det();
    if (delta == Complex{}) throw std::domain_error("singular 2x2 matrix");
    return {d / delta, -b / delta, -c / delta, a / delta};
  }

  /// Conjugate transpose.
  Mat2C adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }

  bool is_finite() const {
    return critic::is_finite(a) && critic::is_finite(b) &&
           critic::is_finite(c) && critic::is_finite(d);
  }
};

/// Singular value decomposition data of a 2x2 complex matrix: the singular
/// values sigma_max >= sigma_min >= 0 together with the orthonormal right
/// singular vectors (v_max is stretched by sigma_max).
struct Svd2 {
  double sigma_max{0.0};
  double sigma_min{0.0};
  Vec2C v_max;
  Vec2C v_min;

  /// Relative singular gap (sigma_max - sigma_min) / sigma_max; 0 when
  /// conformal.
  double relative_gap() const {
    return sigma_max > 0.0 ? (sigma_max - sigma_min) / sigma_max : 0.0;
  }
};

/// Right singular pairs from the hermitian eigenproblem of M^* M.
Svd2 svd2(const Mat2C& m);

/// Operator norm (largest singular value).
double operator_norm(const Mat2C& m);

}  // namespace critic
