#include "critic/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critic {

namespace {

// One golden-section pass over [-h, h] along a chart axis through `base`.
Direction golden_refine_axis(const std::function<double(const Direction&)>& score,
                             const Direction& base, bool imaginary_axis,
                             double h) {
  const Vec2C v = base.rep();
  const Vec2C w{-std::conj(v.v2), std::conj(v.v1)};  // orthonormal complement
  auto at = [&](double s) {
    const Complex step = imaginary_axis ? Complex{0.0, s} : Complex{s, 0.0};
    return Direction(Vec2C{v.v1 + step * w.v1, v.v2 + step * w.v2});
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -h, b = h;
  double c = b - (b - a) * invphi;
  double d = a + (b - a) * invphi;
  double fc = score(at(c));
  double fd = score(at(d));
  for (int it = 0; it < 48; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * invphi;
      fc = score(at(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * invphi;
      fd = score(at(d));
    }
  }
  return fc > fd ? at(c) : at(d);
}

}  // namespace

WitnessSearch::Result WitnessSearch::run(double slack) const {
  Result result;
  auto consider = [&](const Direction& cand) {
    const double m = margin(cand);
    if (m > result.best_margin) {
      result.best_margin = m;
      result.best = cand;
    }
    return m >= -slack;
  };

  const bool primary_passes = primary && consider(*primary);
  if (!primary_passes) {
    Direction best_grid;
    double best_grid_margin = -1e300;
    for (const Direction& cand : fibonacci_directions(grid_points)) {
      const double m = margin(cand);
      if (m > best_grid_margin) {
        best_grid_margin = m;
        best_grid = cand;
      }
    }
    consider(best_grid);

    // Refinement pass: alternating golden sections on the two real chart
    // axes around the best grid candidate, with a shrinking bracket.
    Direction refined = best_grid;
    double h = refine_radius;
    for (int sweep = 0; sweep < 10; ++sweep) {
      refined = golden_refine_axis(margin, refined, false, h);
      refined = golden_refine_axis(margin, refined, true, h);
      h *= 0.35;
    }
    consider(refined);
  }

  if (result.best_margin >= -slack) result.witness = result.best;
  return result;
}

std::optional<Direction> block_membership(const OrbitSegment& orbit, int index,
                                          const BlockQuery& query) {
  if (!(query.alpha > 0.0 && query.alpha < 1.0)) {
    throw std::invalid_argument("block alpha must lie in (0,1)");
  }
  if (query.gamma <= 0.0) throw std::invalid_argument("block gamma must be positive");
  const int n_signed =
      query.sign == BlockSign::forward ? query.horizon : -query.horizon;
  const int lo = std::min(index, index + n_signed);
  const int hi = std::max(index, index + n_signed);
  if (query.horizon < 1 || !orbit.contains_window(lo, hi)) {
    throw std::out_of_range("block horizon out of range");
  }

  const double log_gamma = std::log(query.gamma);
  const double log_alpha = std::log(query.alpha);
  const double slack = query.effective_slack();
  const double strict_shift = query.strict ? slack : 0.0;

  WitnessSearch search;
  search.margin = [&](const Direction& xi) {
    double worst = 1e300;
    double acc = 0.0;
    Vec2C v = xi.rep();
    for (int n = 1; n <= query.horizon; ++n) {
      const int step = query.sign == BlockSign::forward ? index + n - 1 : index - n;
      if (query.sign == BlockSign::forward) {
        v = orbit.matrix(step) * v;
        const double norm = v.norm();
        acc += orbit.log_det(step) - 2.0 * std::log(norm);
        v = v / norm;
      } else {
        v = orbit.matrix_inv(step) * v;
        const double norm = v.norm();
        acc += -orbit.log_det(step) - 2.0 * std::log(norm);
        v = v / norm;
      }
      const double required = log_gamma - static_cast<double>(n) * log_alpha;
      worst = std::min(worst, acc - required - strict_shift);
    }
    return worst;
  };
  const Svd2 sv = svd2(compose(orbit, index, n_signed).matrix);
  search.primary = Direction(sv.v_min);

  return search.run(slack).witness;
}

DissipationResult dissipation_check(const OrbitSegment& orbit, double b, double C,
                                    double slack) {
  if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("b must lie in (0,1)");
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  const double log_b = std::log(b);
  const double log_C = std::log(C);
  DissipationResult out;
  out.pass = true;
  out.worst_margin = 1e300;
  for (int i = orbit.n_min(); i < orbit.n_max(); ++i) {
    double acc = 0.0;
    for (int n = 1; i + n <= orbit.n_max(); ++n) {
      acc += orbit.log_det(i + n - 1);
      const double tau = slack < 0.0 ? default_slack(n) : slack;
      const double margin = log_C + static_cast<double>(n) * log_b + tau - acc;
      if (margin < out.worst_margin) {
        out.worst_margin = margin;
        out.worst_index = i;
        out.worst_n = n;
      }
    }
  }
  if (out.worst_margin == 1e300) out.worst_margin = 0.0;
  out.pass = out.worst_margin >= 0.0;
  return out;
}

DissipationResult dissipation_check(std::span<const OrbitSegment> orbits, double b,
                                    double C, double slack) {
  DissipationResult out;
  out.pass = true;
  out.worst_margin = 1e300;
  for (const OrbitSegment& orbit : orbits) {
    const DissipationResult r = dissipation_check(orbit, b, C, slack);
    if (r.worst_margin < out.worst_margin) out = r;
  }
  if (out.worst_margin == 1e300) out.worst_margin = 0.0;
  out.pass = out.worst_margin >= 0.0;
  return out;
}

SectionTestResult contractive_section_test(std::span<const OrbitSegment> orbits,
                                           const Section& section, int k,
                                           double eta, double disc_radius,
                                           int disc_samples) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double log_eta = std::log(eta);

  SectionTestResult out;
  out.pass = true;
  out.worst_log_g = -1e300;
  out.disc_contained = true;

  for (const OrbitSegment& orbit : orbits) {
    // Invariance of the section along every step of the window.
    for (int i = orbit.n_min(); i < orbit.n_max(); ++i) {
      const Direction pushed = mobius_apply(orbit.matrix(i), section(orbit, i));
      if (spherical_distance(pushed, section(orbit, i + 1)) > 1e-6) {
        throw std::runtime_error("section not invariant");
      }
    }
    for (int i = orbit.n_min(); i + k <= orbit.n_max(); ++i) {
      const Direction sigma = section(orbit, i);
      const double value = log_g(orbit, i, sigma, k);
      if (value > out.worst_log_g) {
        out.worst_log_g = value;
        out.worst_orbit = orbit.id();
        out.worst_index = i;
      }
      if (!(value < log_eta)) out.pass = false;

      // Disc variant: image radius of disc_samples boundary points of
      // D_r(sigma(z)), measured in the chart centered at sigma(f^k(z)).
      const Direction target = section(orbit, i + k);
      const Mat2C center = isometry_to_zero(target);
      const Mat2C lift = isometry_to_zero(sigma).inverse();
      for (int j = 0; j < disc_samples; ++j) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(j) / disc_samples;
        const SpherePoint rim(Complex{disc_radius * std::cos(theta),
                                      disc_radius * std::sin(theta)});
        Direction point = mobius_apply(lift, Direction::from_chart(rim));
        point = push_direction(orbit, i, point, k);
        const SpherePoint image = mobius_apply(center, point).chart();
        const double radius = image.at_infinity ? 1e300 : std::abs(image.z);
        out.disc_max_radius = std::max(out.disc_max_radius, radius);
      }
    }
  }
  out.disc_contained = out.disc_max_radius < disc_radius;
  return out;
}

DominationCertificate domination_certificate(std::span<const OrbitSegment> orbits,
                                             int horizon, double lambda, double C,
                                             double slack) {
  if (!(lambda > 1.0)) throw std::invalid_argument("lambda must exceed 1");
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  DominationCertificate cert;
  cert.lambda = lambda;
  cert.C = C;
  cert.horizon = horizon;
  cert.slack = slack < 0.0 ? default_slack(horizon) : slack;
  cert.pass = true;

  const double log_lambda = std::log(lambda);
  const double log_C = std::log(C);

  for (const OrbitSegment& orbit : orbits) {
    for (int i = orbit.n_min(); i + horizon <= orbit.n_max(); ++i) {
      // The witness maximizing horizon growth is the least-stretched right
      // singular direction of A^n, with g(n, .) = |det A^n| / sigma_min^2 =
      // sigma_max / sigma_min. Evaluating per n through the singular values
      // stays exact where a pushed representative would slide off the
      // witness at the transverse rate (a 372-gap saddle exhausts double
      // precision within ~8 steps).
      double worst = 1e300;
      Mat2C acc = Mat2C::identity();
      double log_scale = 0.0;
      Direction witness;
      for (int n = 1; n <= horizon; ++n) {
        acc = orbit.matrix(i + n - 1) * acc;
        const double s = acc.frobenius_norm();
        acc = acc / s;
        log_scale += std::log(s);
        const Svd2 sv = svd2(acc);
        const double log_ratio = std::log(sv.sigma_max) - std::log(sv.sigma_min);
        worst = std::min(worst,
                         log_ratio - log_C - static_cast<double>(n) * log_lambda);
        if (n == horizon) witness = Direction(sv.v_min);
      }

      DominationCertificate::PerPoint entry;
      entry.orbit_id = orbit.id();
      entry.index = i;
      entry.witness = witness;
      entry.min_margin = worst;
      entry.pass = worst >= -cert.slack;
      if (!entry.pass) cert.pass = false;
      cert.per_point.push_back(std::move(entry));
    }
  }
  return cert;
}

CriteriaResult criteria_domination_check(std::span<const OrbitSegment> orbits,
                                         int k0, int m0, double beta,
                                         double slack) {
  if (k0 < 1 || m0 < 0) throw std::invalid_argument("k0 >= 1 and m0 >= 0 required");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");

  CriteriaResult out;
  out.pass = true;
  const double bound = -static_cast<double>(k0) * std::log(beta);
  const double tau = slack < 0.0 ? default_slack(k0) : slack;

  for (const OrbitSegment& orbit : orbits) {
    for (int anchor = orbit.n_min(); anchor <= orbit.n_max() - k0; ++anchor) {
      const int m_hi = orbit.n_max() - k0 - anchor;
      if (m_hi <= m0) continue;  // no checkable m beyond m0 at this anchor

      WitnessSearch search;
      search.margin = [&](const Direction& xi) {
        double worst = 1e300;
        Vec2C v = xi.rep();
        for (int m = 0; m <= m_hi; ++m) {
          if (m > m0) {
            const double value = log_g(orbit, anchor + m, Direction(v), k0);
            worst = std::min(worst, bound + tau - value);
          }
          if (m < m_hi) {
            v = orbit.matrix(anchor + m) * v;
            v = v / v.norm();
          }
        }
        return worst;
      };
      // A direction that is never over-expanded tracks the most-stretched
      // singular direction of the long iterate.
      search.primary =
          Direction(svd2(compose(orbit, anchor, m_hi + k0).matrix).v_max);
      const WitnessSearch::Result r = search.run(tau);

      CriteriaWitness w;
      w.orbit_id = orbit.id();
      w.index = anchor;
      w.witness = r.witness;
      w.worst_margin = r.best_margin;
      if (!r.witness) out.pass = false;
      out.witnesses.push_back(std::move(w));
    }
  }
  return out;
}

std::optional<PropertyPWitness> property_P_witness(
    std::span<const OrbitSegment> orbits, double beta0, int k, double slack) {
  if (!(beta0 > 0.0 && beta0 < 1.0)) {
    throw std::invalid_argument("beta0 must lie in (0,1)");
  }
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double tau = slack < 0.0 ? default_slack(k) : slack;
  const double log_beta0 = std::log(beta0);

  for (const OrbitSegment& orbit : orbits) {
    for (int index = orbit.n_min() + k; index <= orbit.n_max() - k; ++index) {
      // Candidates: the past-expanded singular direction first, then the grid.
      std::vector<Direction> candidates;
      candidates.push_back(Direction(svd2(compose(orbit, index, -k).matrix).v_min));
      for (const Direction& d : fibonacci_directions(256)) candidates.push_back(d);

      for (const Direction& xi : candidates) {
        bool backward_ok = true;
        for (int n = 1; n <= k; ++n) {
          if (log_g(orbit, index, xi, -n) <
              -static_cast<double>(n) * log_beta0 - tau) {
            backward_ok = false;
            break;
          }
        }
        if (!backward_ok) continue;
        Vec2C v = xi.rep();
        for (int m = 0; index + m + k <= orbit.n_max(); ++m) {
          if (log_g(orbit, index + m, Direction(v), k) >= -tau) {
            return PropertyPWitness{orbit.id(), index, xi, m};
          }
          if (index + m < orbit.n_max()) {
            v = orbit.matrix(index + m) * v;
            v = v / v.norm();
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace critic
