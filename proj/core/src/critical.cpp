#include "critic/critical.hpp"

#include <algorithm>
#include <cmath>

namespace critic {

bool beta_leq(const Beta& alpha, const Beta& beta) {
  return beta.beta_minus >= alpha.beta_minus && beta.beta_plus <= alpha.beta_plus;
}

TimesMargins is_critical_at_times(const OrbitSegment& orbit, int index,
                                  const Beta& beta, int n_minus, int n_plus,
                                  int K, const Direction& xi, double slack,
                                  const HermitianForm& metric) {
  if (n_minus > 0 || n_plus < 0) {
    throw std::invalid_argument("need n_minus <= 0 <= n_plus");
  }
  if (K < 0) throw std::invalid_argument("horizon must be >= 0");
  if (!orbit.contains_window(index + n_minus - K, index + n_plus + K)) {
    throw std::out_of_range("criticality window out of range");
  }
  const double tau = slack < 0.0 ? default_slack(K) : slack;
  const double log_bm = std::log(beta.beta_minus);
  const double log_bp = std::log(beta.beta_plus);

  const Direction back_dir = push_direction(orbit, index, xi, n_minus);
  const Direction fwd_dir = push_direction(orbit, index, xi, n_plus);

  TimesMargins out;
  out.min_margin_back = 1e300;
  out.min_margin_fwd = 1e300;
  for (int n = 1; n <= K; ++n) {
    const double back =
        log_g_in_metric(orbit, index + n_minus, back_dir, -n, metric) +
        static_cast<double>(n) * log_bm;
    const double fwd =
        log_g_in_metric(orbit, index + n_plus, fwd_dir, n, metric) -
        static_cast<double>(n) * log_bp;
    out.min_margin_back = std::min(out.min_margin_back, back);
    out.min_margin_fwd = std::min(out.min_margin_fwd, fwd);
  }
  if (K == 0) {
    out.min_margin_back = 0.0;
    out.min_margin_fwd = 0.0;
  }
  out.pass = out.min_margin_back >= -tau && out.min_margin_fwd >= -tau;
  return out;
}

std::optional<CriticalReport> detect_critical(const OrbitSegment& orbit,
                                              int index, const Beta& beta, int K,
                                              double slack,
                                              const HermitianForm& metric) {
  if (K < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!orbit.contains_window(index - K, index + K)) {
    throw std::out_of_range("criticality window out of range");
  }
  // The backward condition binds, so the past-expanded direction (the
  // least-stretched right singular direction of A^{-K}) seeds the search.
  std::vector<Direction> candidates;
  candidates.push_back(Direction(svd2(compose(orbit, index, -K).matrix).v_min));
  for (const Direction& d : fibonacci_directions(256)) candidates.push_back(d);

  for (const Direction& xi : candidates) {
    const TimesMargins m =
        is_critical_at_times(orbit, index, beta, 0, 0, K, xi, slack, metric);
    if (m.pass) {
      CriticalReport report;
      report.orbit_id = orbit.id();
      report.index = index;
      report.direction = xi;
      report.beta = beta;
      report.n_minus = 0;
      report.n_plus = 0;
      report.horizon = K;
      report.min_margin_back = m.min_margin_back;
      report.min_margin_fwd = m.min_margin_fwd;
      return report;
    }
  }
  return std::nullopt;
}

CriticalReport normalize_time(const OrbitSegment& orbit,
                              const CriticalReport& report, int K) {
  if (report.n_minus == 0 && report.n_plus == 0) return report;
  const int lo = report.index + report.n_minus - K;
  const int hi = report.index + report.n_plus + K;
  if (!orbit.contains_window(lo, hi)) {
    throw std::out_of_range("normalize_time window out of range");
  }

  // a_n = log g(n, xi) relative to the report's base fiber.
  RealSeq seq;
  seq.offset = lo - report.index;
  const LogMultiplierSeries series =
      g_series(orbit, report.index, report.direction,
               report.index - lo, hi - report.index);
  seq.values = series.values;

  const double delta_minus = std::log(report.beta.beta_minus);
  const double delta_plus = std::log(report.beta.beta_plus);
  const double tau = default_slack(K);
  const int shift = tangency_shift(seq, report.n_minus, report.n_plus,
                                   delta_minus, delta_plus, tau);

  CriticalReport out = report;
  out.index = report.index + shift;
  out.direction = push_direction(orbit, report.index, report.direction, shift);
  out.n_minus = 0;
  out.n_plus = 0;
  out.horizon = K;
  const TimesMargins m = is_critical_at_times(orbit, out.index, report.beta, 0, 0,
                                              K, out.direction, 4.0 * tau);
  out.min_margin_back = m.min_margin_back;
  out.min_margin_fwd = m.min_margin_fwd;
  return out;
}

std::optional<int> distinguished_critical(const OrbitSegment& orbit,
                                          const Beta& beta, int K, double slack) {
  for (int index = orbit.n_max() - K; index >= orbit.n_min() + K; --index) {
    if (detect_critical(orbit, index, beta, K, slack)) return index;
  }
  return std::nullopt;
}

std::optional<CriticalReport> detect_critical_value(const OrbitSegment& orbit,
                                                    int index, const Beta& beta,
                                                    int K, double slack) {
  const OrbitSegment reversed = orbit.reversed();
  std::optional<CriticalReport> report =
      detect_critical(reversed, -index, beta, K, slack);
  if (!report) return std::nullopt;
  report->orbit_id = orbit.id();
  report->index = index;
  report->for_inverse_cocycle = true;
  return report;
}

std::optional<CriticalPair> critical_pair_search(const OrbitSegment& orbit,
                                                 const CriticalReport& crit,
                                                 int L, double eps, double slack) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  std::optional<CriticalPair> best;
  std::vector<int> approaches;
  Vec2C v = crit.direction.rep();
  for (int l = 1; l <= L && crit.index + l <= orbit.n_max(); ++l) {
    v = orbit.matrix(crit.index + l - 1) * v;
    v = v / v.norm();
    const int target = crit.index + l;
    const int K = crit.horizon;
    if (!orbit.contains_window(target - K, target + K)) continue;
    const std::optional<CriticalReport> value =
        detect_critical_value(orbit, target, crit.beta, K, slack);
    if (!value) continue;
    const double dist = spherical_distance(Direction(v), value->direction);
    if (dist < eps) {
      approaches.push_back(l);
      if (!best || dist < best->approach_distance) {
        CriticalPair pair;
        pair.crit = crit;
        pair.value_index = target;
        pair.value_direction = value->direction;
        pair.approach_distance = dist;
        pair.finite_horizon = true;
        best = pair;
      }
    }
  }
  if (best) best->approach_times = approaches;
  return best;
}

BlockRelation block_relation_check(const OrbitSegment& orbit,
                                   const CriticalReport& report,
                                   const Beta& beta) {
  BlockRelation out;
  if (report.horizon == 0) {
    out.pass = true;
    out.degenerate = true;
    return out;
  }
  const int K = report.horizon;

  // (a) f^{n_minus}(x) sits in H^-(beta_minus).
  const int back_index = report.index + report.n_minus;
  const int back_horizon = std::min(K, back_index - orbit.n_min());
  if (back_horizon < 1) {
    out.pass = false;
    return out;
  }
  BlockQuery back;
  back.alpha = beta.beta_minus;
  back.gamma = 1.0;
  back.sign = BlockSign::backward;
  back.horizon = back_horizon;
  if (!block_membership(orbit, back_index, back)) {
    out.pass = false;
    return out;
  }

  // (b) the K indices after n_plus all avoid the open block
  // H^-(beta_plus): no sampled direction passes the strict query.
  for (int n = 1; n <= K; ++n) {
    const int idx = report.index + report.n_plus + n;
    if (idx > orbit.n_max()) break;
    const int horizon = std::min(3 * K, idx - orbit.n_min());
    if (horizon < 1) continue;
    BlockQuery strict;
    strict.alpha = beta.beta_plus;
    strict.gamma = 1.0;
    strict.sign = BlockSign::backward;
    strict.horizon = horizon;
    strict.strict = true;
    if (block_membership(orbit, idx, strict)) {
      out.pass = false;
      return out;
    }
  }
  out.pass = true;
  return out;
}

RegularityConflict regularity_conflict_check(const OrbitSegment& orbit,
                                             const CriticalReport& report,
                                             int N) {
  RegularityConflict out;
  if (N < 2 || !orbit.contains_window(report.index - N, report.index + N)) {
    out.flag = "horizon too short";
    return out;
  }
  const LyapunovEstimate est = lyapunov_estimate(orbit, report.index, N);
  const double low_rate = est.lambda_minus - est.lambda_plus;
  const double fwd_rate =
      log_g(orbit, report.index, report.direction, N) / static_cast<double>(N);
  const double bwd_rate =
      log_g(orbit, report.index, report.direction, -N) / static_cast<double>(N);
  const double sep = default_slack(N);
  // A regular direction realizes the rate low_rate on one side: forward for
  // the expanding splitting member, backward for the contracting one. A
  // critical direction exceeds it on both.
  out.conflict = fwd_rate > low_rate + sep && bwd_rate > low_rate + sep;
  return out;
}

OrbitSegment make_tangency_orbit(int n_back, int n_fwd,
                                 const TangencyFixtureParams& params) {
  if (n_back < 0 || n_fwd < 1) {
    throw std::invalid_argument("fixture needs n_back >= 0, n_fwd >= 1");
  }
  const Mat2C saddle = Mat2C::diag(Complex{params.lambda_u, 0.0},
                                   Complex{params.lambda_s, 0.0});
  const Mat2C swap{Complex{}, params.s, params.t, Complex{}};

  std::vector<BasePoint> points;
  std::vector<Mat2C> matrices;
  for (int n = -n_back; n <= n_fwd; ++n) {
    points.push_back({Complex{static_cast<double>(n), 0.0}, Complex{}});
    if (n < n_fwd) {
      const bool is_swap =
          std::find(params.swap_indices.begin(), params.swap_indices.end(), n) !=
          params.swap_indices.end();
      matrices.push_back(is_swap ? swap : saddle);
    }
  }
  return OrbitSegment("synthetic-tangency", -n_back, std::move(points),
                      std::move(matrices));
}

}  // namespace critic
