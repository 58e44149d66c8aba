#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace critic {

/// A finite real sequence; values[i] carries index offset + i.
struct RealSeq {
  std::vector<double> values;
  int offset{0};

  int lo() const { return offset; }
  int hi() const { return offset + static_cast<int>(values.size()) - 1; }
  double at(int n) const { return values.at(static_cast<size_t>(n - offset)); }
  bool contains(int n) const { return n >= lo() && n <= hi(); }
};

struct PlissParams {
  double gamma0{0.9};
  double gamma1{0.5};
  double a_bound{4.0};
};

/// The hyperbolic-time set of a positive sequence (a_0, ..., a_{n-1}):
/// Ht = { 0 <= k < n : prod_{l=k+1}^{s} a_l >= gamma1^{s-k} for all k < s < n }.
/// k = n-1 is vacuously hyperbolic. Computed in O(n) by a suffix-minimum
/// scan of cumulative logs. Throws std::invalid_argument on a non-positive
/// entry.
std::vector<int> hyperbolic_times(std::span<const double> a, double gamma1);

/// Counting constants for Pliss's lemma. The source lemma asserts existence
/// only; these are the standard counting-proof constants,
/// delta0 = (log g0 - log g1) / (log a - log g1), N0 = ceil(1/delta0),
/// validated stochastically in the test suite rather than proved here.
struct PlissConstants {
  std::int64_t N0{1};
  double delta0{0.0};
};
PlissConstants pliss_constants(const PlissParams& p);

/// Corollary-style time shift: given the cumulative series a_i = log g(i)
/// on [0, n] with g(n) >= gamma0^n, return the smallest j = k0 + 1 (k0 the
/// lowest hyperbolic time of the per-step factors at gamma1) such that
/// g(i, shifted) >= gamma1^i for 0 < i <= n - j. Returns nullopt when the
/// hypothesis g(n) >= gamma0^n fails (corollary inapplicable).
std::optional<int> shift_to_hyperbolic(const RealSeq& log_g_series, double gamma0,
                                       double gamma1, int n);

/// Polygonal time-shift: for a sequence satisfying
///   (a)  a_n - a_{n0} >= (n - n0) delta_minus  for n <= n0,
///   (b)  a_n - a_{n1} >= (n - n1) delta_plus   for n >= n1,
/// with delta_plus <= delta_minus < 0, returns an integer N in [n0, n1] with
/// a_{N+n} - a_N >= n delta_plus and a_{N-n} - a_N >= -n delta_minus for all
/// representable n >= 0. Selection follows the tangent-line construction:
/// d-/d+ are the suprema of intercepts keeping the lines below the polygon
/// on [n0,0] / [0,n1]; the d- <= d+ branch returns the largest tangency
/// integer <= 0, the other branch the smallest tangency integer >= 0.
/// Throws TangencyHypothesisError naming the first violated index.
struct TangencyHypothesisError : std::invalid_argument {
  int bad_index;
  explicit TangencyHypothesisError(int index)
      : std::invalid_argument("lemma hypotheses fail"), bad_index(index) {}
};
int tangency_shift(const RealSeq& seq, int n0, int n1, double delta_minus,
                   double delta_plus, double slack = 0.0);

/// Linear extension used when a window is too short for the shift: values
/// below the data follow the line through (n0, a_{n0}) with slope
/// delta_minus, values above the line through (n1, a_{n1}) with slope
/// delta_plus — the extension the existence arguments use.
RealSeq extend_for_tangency(const RealSeq& seq, int n0, int n1,
                            double delta_minus, double delta_plus, int new_lo,
                            int new_hi);

}  // namespace critic
