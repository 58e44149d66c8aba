#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "critic/orbit.hpp"

namespace critic {

enum class BlockSign { forward, backward };

/// Query for membership in a block of domination gamma*H^{+/-}(alpha):
/// a witness direction xi with g(+/-n, xi) >= gamma * alpha^{-n} for
/// 1 <= n <= horizon, inequalities evaluated in the log domain with `slack`.
struct BlockQuery {
  double alpha{0.5};
  double gamma{1.0};
  BlockSign sign{BlockSign::forward};
  int horizon{1};
  double slack{-1.0};  // < 0 means default_slack(horizon)
  bool strict{false};  // open block: strict inequality (slack subtracted)

  double effective_slack() const {
    return slack < 0.0 ? default_slack(horizon) : slack;
  }
};

/// Witness-direction search machinery shared by the block and criticality
/// detectors: score a direction by the worst margin of a family of
/// inequalities, try the extremal singular candidate first, fall back to a
/// 256-point Fibonacci grid with a golden-section refinement pass.
struct WitnessSearch {
  /// Worst log-margin of the candidate; a pass is margin >= -slack.
  std::function<double(const Direction&)> margin;
  /// Primary candidate (least-stretched singular direction of the horizon
  /// iterate); may be absent when the iterate is out of range.
  std::optional<Direction> primary;
  int grid_points{256};
  double refine_radius{0.25};

  struct Result {
    std::optional<Direction> witness;  // set only when best_margin >= -slack
    Direction best;                    // best-scoring candidate regardless
    double best_margin{-1e300};
  };
  Result run(double slack) const;
};

/// Membership in gamma*H^{+/-}(alpha) at `index`: a witness direction, or
/// none. The primary candidate is the least-stretched right singular
/// direction of the horizon iterate (A^N for +, A^{-N} for -).
std::optional<Direction> block_membership(const OrbitSegment& orbit, int index,
                                          const BlockQuery& query);

/// b-asymptotic dissipativity: log|det A^n| <= log C + n log b + slack for
/// every forward window inside the orbit. Margin is the worst slack left.
struct DissipationResult {
  bool pass{false};
  double worst_margin{0.0};
  int worst_index{0};
  int worst_n{0};
};
DissipationResult dissipation_check(const OrbitSegment& orbit, double b, double C,
                                    double slack = -1.0);
DissipationResult dissipation_check(std::span<const OrbitSegment> orbits, double b,
                                    double C, double slack = -1.0);

/// An M-invariant candidate section, evaluated per orbit and index.
using Section = std::function<Direction(const OrbitSegment&, int)>;

/// Contractive-section test: g(k, sigma(z)) < eta at every sampled point,
/// plus the disc image check on `disc_samples` boundary points of the
/// spherical disc of radius `disc_radius`. Throws std::runtime_error
/// ("section not invariant") when M(sigma(z)) strays from sigma(f(z)) by
/// more than 1e-6.
struct SectionTestResult {
  bool pass{false};
  std::string worst_orbit;
  int worst_index{0};
  double worst_log_g{0.0};  // max over samples of log g(k, sigma(z))
  double disc_max_radius{0.0};
  bool disc_contained{false};
};
SectionTestResult contractive_section_test(std::span<const OrbitSegment> orbits,
                                           const Section& section, int k,
                                           double eta, double disc_radius = 0.1,
                                           int disc_samples = 32);

/// Certificate for Theorem-3.4-style domination: at every start index a
/// witness direction satisfies g(n, tau) >= C lambda^n for 1 <= n <= horizon.
struct DominationCertificate {
  double lambda{1.0};
  double C{1.0};
  int horizon{1};
  double slack{0.0};
  struct PerPoint {
    std::string orbit_id;
    int index{0};
    Direction witness;
    double min_margin{0.0};
    bool pass{false};
  };
  std::vector<PerPoint> per_point;
  bool pass{false};
};
DominationCertificate domination_certificate(std::span<const OrbitSegment> orbits,
                                             int horizon, double lambda, double C,
                                             double slack = -1.0);

/// Hypothesis tester for the domination criteria: for every sampled index a
/// direction xi with g(k0, M^m xi) <= beta^{-k0} for all m0 < m within the
/// window. Necessary-side only at finite horizon: a `true` here does not
/// certify the converse.
struct CriteriaWitness {
  std::string orbit_id;
  int index{0};
  std::optional<Direction> witness;
  double worst_margin{0.0};  // min over m of (-k0 log beta + slack - log g)
  int worst_m{0};
};
struct CriteriaResult {
  bool pass{false};
  std::vector<CriteriaWitness> witnesses;
};
CriteriaResult criteria_domination_check(std::span<const OrbitSegment> orbits,
                                         int k0, int m0, double beta,
                                         double slack = -1.0);

/// Search for a property-P(beta0) witness: index x, direction xi and shift
/// m_k with g(-n, xi) >= beta0^{-n} for 1 <= n <= k and g(k, M^{m_k} xi) >= 1.
/// Scans indices ascending, candidate directions in fixed order, and m_k
/// ascending from 0; returns the first hit.
struct PropertyPWitness {
  std::string orbit_id;
  int index{0};
  Direction direction;
  int m_k{0};
};
std::optional<PropertyPWitness> property_P_witness(
    std::span<const OrbitSegment> orbits, double beta0, int k,
    double slack = -1.0);

}  // namespace critic
