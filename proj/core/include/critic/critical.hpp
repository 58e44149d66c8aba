#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critic/blocks.hpp"
#include "critic/orbit.hpp"
#include "critic/pliss.hpp"

namespace critic {

/// A pair (beta_minus, beta_plus) with 0 < beta_plus <= beta_minus < 1.
struct Beta {
  double beta_minus{0.9};
  double beta_plus{0.5};

  Beta() = default;
  Beta(double minus, double plus) : beta_minus(minus), beta_plus(plus) {
    if (!(0.0 < beta_plus && beta_plus <= beta_minus && beta_minus < 1.0)) {
      throw std::invalid_argument("need 0 < beta_plus <= beta_minus < 1");
    }
  }
};

/// Partial order on the parameter triangle: beta >= alpha iff
/// beta_minus >= alpha_minus and beta_plus <= alpha_plus (the +/-1 exponents
/// unfolded). beta_leq(alpha, beta) is "beta dominates alpha".
bool beta_leq(const Beta& alpha, const Beta& beta);

/// Structured output of the criticality detectors.
struct CriticalReport {
  std::string orbit_id;
  int index{0};
  Direction direction;
  Beta beta;
  int n_minus{0};  // times (n_minus <= 0, n_plus >= 0)
  int n_plus{0};
  int horizon{0};  // K
  double min_margin_back{0.0};
  double min_margin_fwd{0.0};
  bool for_inverse_cocycle{false};  // critical value reports
};

struct CriticalPair {
  CriticalReport crit;
  int value_index{0};
  Direction value_direction;
  std::vector<int> approach_times;
  double approach_distance{0.0};
  bool finite_horizon{true};  // single close approach, not a limit
};

struct TimesMargins {
  bool pass{false};
  double min_margin_back{0.0};
  double min_margin_fwd{0.0};
};

/// beta-criticality at the times (n_minus, n_plus) over horizon K:
///   log g(-n, M^{n_minus} xi) >= -n log beta_minus - tau and
///   log g(+n, M^{n_plus}  xi) >= +n log beta_plus  - tau for 1 <= n <= K.
/// The orbit must cover [index + n_minus - K, index + n_plus + K].
TimesMargins is_critical_at_times(const OrbitSegment& orbit, int index,
                                  const Beta& beta, int n_minus, int n_plus,
                                  int K, const Direction& xi,
                                  double slack = -1.0,
                                  const HermitianForm& metric = HermitianForm::standard());

/// Detect a beta-critical point at `index` (times (0,0)). Candidates are the
/// past-expanded singular direction of A^{-K} followed by the Fibonacci
/// grid; the first passing candidate wins.
std::optional<CriticalReport> detect_critical(
    const OrbitSegment& orbit, int index, const Beta& beta, int K,
    double slack = -1.0,
    const HermitianForm& metric = HermitianForm::standard());

/// Shift a report at times (n_minus, n_plus) to times (0,0) via the
/// polygonal tangency shift on a_n = log g(n, xi) with delta_pm = log
/// beta_pm. The returned index differs by at most max(n_plus, -n_minus).
/// Throws TangencyHypothesisError when the recorded margins fail
/// numerically.
CriticalReport normalize_time(const OrbitSegment& orbit,
                              const CriticalReport& report, int K);

/// Largest index in the testable window whose detect_critical succeeds.
std::optional<int> distinguished_critical(const OrbitSegment& orbit,
                                          const Beta& beta, int K,
                                          double slack = -1.0);

/// Critical value: a critical point of the inverse cocycle at `index`.
std::optional<CriticalReport> detect_critical_value(const OrbitSegment& orbit,
                                                    int index, const Beta& beta,
                                                    int K, double slack = -1.0);

/// Scan l in [1, L] for pushed directions M^l xi that land within eps
/// (spherical) of a direction passing detect_critical_value; returns the
/// pair with the smallest approach distance.
std::optional<CriticalPair> critical_pair_search(const OrbitSegment& orbit,
                                                 const CriticalReport& crit,
                                                 int L, double eps = 1e-3,
                                                 double slack = -1.0);

/// Consistency of a report with the block picture: (a) the shifted index
/// lies in H^-(beta_minus); (b) no direction passes the strict open
/// H^-(beta_plus) query at the K indices after n_plus.
struct BlockRelation {
  bool pass{false};
  bool degenerate{false};  // K = 0: vacuous
};
BlockRelation block_relation_check(const OrbitSegment& orbit,
                                   const CriticalReport& report,
                                   const Beta& beta);

/// Diagnostic: the report's forward and backward g-rates both exceed the
/// lambda_minus - lambda_plus value a regular point would force on one of
/// them. Returns false with flag "horizon too short" for N < 2 or when the
/// window cannot host the estimate.
struct RegularityConflict {
  bool conflict{false};
  std::string flag;
};
RegularityConflict regularity_conflict_check(const OrbitSegment& orbit,
                                             const CriticalReport& report,
                                             int N);

/// Synthetic tangency cocycle: diag(lambda_u, lambda_s) at every step except
/// an axis swap [[0, s], [t, 0]] at each index in `swap_indices`. With the
/// default parameters (lambda_u = 2, lambda_s = 0.3, s = t = sqrt(0.6), so
/// |det| = 0.6 throughout) index 0 carries a certified critical point with
/// direction e1: g(-n, e1) = (20/3)^n and g(n+1, e1) = (20/3)^n * (0.6/|t|^2).
struct TangencyFixtureParams {
  double lambda_u{2.0};
  double lambda_s{0.3};
  Complex s{0.7745966692414834, 0.0};  // sqrt(0.6)
  Complex t{0.7745966692414834, 0.0};
  std::vector<int> swap_indices{0};
};
OrbitSegment make_tangency_orbit(int n_back, int n_fwd,
                                 const TangencyFixtureParams& params = {});

}  // namespace critic
