#include "critic/complexmath.hpp"

#include <algorithm>
#include <cmath>

namespace critic {

Svd2 svd2(const Mat2C& m) {
  // Hermitian Gram matrix M^* M = [[p, q], [conj(q), r]] with p, r real.
  const double p = std::norm(m.a) + std::norm(m.c);
  const double r = std::norm(m.b) + std::norm(m.d);
  const Complex q = std::conj(m.a) * m.b + std::conj(m.c) * m.d;

  const double half_tr = 0.5 * (p + r);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (p - r) * (p - r) + std::norm(q)));
  const double lam_max = std::max(0.0, half_tr + disc);

  Svd2 out;
  out.sigma_max = std::sqrt(lam_max);
  // half_tr - disc cancels catastrophically for ill-conditioned inputs; the
  // product identity sigma_max * sigma_min = |det| is exact.
  out.sigma_min = out.sigma_max > 0.0 ? std::abs(m.det()) / out.sigma_max : 0.0;

  if (disc <= 1e-15 * std::max(1.0, half_tr)) {
    // Conformal within precision: any orthonormal pair works.
    out.v_max = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    out.v_min = {Complex{0.0, 0.0}, Complex{1.0, 0.0}};
    return out;
  }

  // Eigenvector of the Gram matrix for lam_max; pick the better-conditioned
  // of the two classical expressions.
  Vec2C u{q, Complex{lam_max - p, 0.0}};
  Vec2C w{Complex{lam_max - r, 0.0}, std::conj(q)};
  Vec2C vmax = u.norm_sq() >= w.norm_sq() ? u : w;
  vmax = vmax / vmax.norm();
  out.v_max = vmax;
  // Orthogonal complement in C^2.
  out.v_min = {-std::conj(vmax.v2), std::conj(vmax.v1)};
  return out;
}

double operator_norm(const Mat2C& m) { return svd2(m).sigma_max; }

}  // namespace critic
