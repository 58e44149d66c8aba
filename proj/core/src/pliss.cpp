#include "critic/pliss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critic {

std::vector<int> hyperbolic_times(std::span<const double> a, double gamma1) {
  if (!(gamma1 > 0.0)) throw std::invalid_argument("gamma1 must be positive");
  const int n = static_cast<int>(a.size());
  std::vector<int> out;
  if (n == 0) return out;

  const double log_gamma1 = std::log(gamma1);
  // c[j] = sum_{l=0}^{j-1} (log a_l - log gamma1); k is hyperbolic iff
  // min_{j in [k+2, n]} c[j] >= c[k+1].
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  for (int l = 0; l < n; ++l) {
    if (!(a[static_cast<size_t>(l)] > 0.0)) {
      throw std::invalid_argument("hyperbolic_times needs positive entries");
    }
    c[static_cast<size_t>(l) + 1] =
        c[static_cast<size_t>(l)] + std::log(a[static_cast<size_t>(l)]) - log_gamma1;
  }
  std::vector<double> suffix_min(static_cast<size_t>(n) + 2,
                                 std::numeric_limits<double>::infinity());
  for (int j = n; j >= 0; --j) {
    suffix_min[static_cast<size_t>(j)] =
        std::min(c[static_cast<size_t>(j)], suffix_min[static_cast<size_t>(j) + 1]);
  }
  for (int k = 0; k < n; ++k) {
    if (k == n - 1 ||
        suffix_min[static_cast<size_t>(k) + 2] >= c[static_cast<size_t>(k) + 1]) {
      out.push_back(k);
    }
  }
  return out;
}

PlissConstants pliss_constants(const PlissParams& p) {
  if (!(0.0 < p.gamma1 && p.gamma1 < p.gamma0)) {
    throw std::invalid_argument("need 0 < gamma1 < gamma0");
  }
  if (!(p.a_bound >= std::max(p.gamma0, 1.0 / p.gamma1) && p.a_bound > p.gamma0)) {
    throw std::invalid_argument("a must dominate max(gamma0, 1/gamma1)");
  }
  PlissConstants out;
  out.delta0 = (std::log(p.gamma0) - std::log(p.gamma1)) /
               (std::log(p.a_bound) - std::log(p.gamma1));
  const double n0 = std::ceil(1.0 / out.delta0);
  out.N0 = n0 >= static_cast<double>(std::numeric_limits<std::int64_t>::max())
               ? std::numeric_limits<std::int64_t>::max()
               : static_cast<std::int64_t>(n0);
  return out;
}

std::optional<int> shift_to_hyperbolic(const RealSeq& series, double gamma0,
                                       double gamma1, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!series.contains(0) || !series.contains(n)) {
    throw std::out_of_range("series must cover [0, n]");
  }
  if (series.at(n) - series.at(0) < static_cast<double>(n) * std::log(gamma0)) {
    return std::nullopt;  // hypothesis g(n) >= gamma0^n fails
  }
  std::vector<double> factors(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    factors[static_cast<size_t>(l)] = std::exp(series.at(l + 1) - series.at(l));
  }
  const std::vector<int> ht = hyperbolic_times(factors, gamma1);
  // ht is nonempty (k = n-1 is vacuous); the corollary takes the lowest
  // hyperbolic time plus one.
  return ht.front() + 1;
}

namespace {

void check_tangency_hypotheses(const RealSeq& seq, int n0, int n1,
                               double delta_minus, double delta_plus,
                               double slack) {
  for (int n = seq.lo(); n <= n0; ++n) {
    if (seq.at(n) - seq.at(n0) <
        static_cast<double>(n - n0) * delta_minus - slack) {
      throw TangencyHypothesisError(n);
    }
  }
  for (int n = n1; n <= seq.hi(); ++n) {
    if (seq.at(n) - seq.at(n1) <
        static_cast<double>(n - n1) * delta_plus - slack) {
      throw TangencyHypothesisError(n);
    }
  }
}

}  // namespace

int tangency_shift(const RealSeq& seq, int n0, int n1, double delta_minus,
                   double delta_plus, double slack) {
  if (!(delta_plus <= delta_minus && delta_minus < 0.0)) {
    throw std::invalid_argument("need delta_plus <= delta_minus < 0");
  }
  if (!(n0 <= 0 && 0 <= n1)) throw std::invalid_argument("need n0 <= 0 <= n1");
  if (!seq.contains(n0) || !seq.contains(n1)) {
    throw std::out_of_range("sequence must cover [n0, n1]");
  }
  check_tangency_hypotheses(seq, n0, n1, delta_minus, delta_plus, slack);

  // The minimum of a_n - n*delta over each side is attained at sequence
  // vertices, so the tangency sets are scanned over integers directly.
  double d_minus = std::numeric_limits<double>::infinity();
  for (int n = n0; n <= 0; ++n) {
    d_minus = std::min(d_minus, seq.at(n) - static_cast<double>(n) * delta_minus);
  }
  double d_plus = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n1; ++n) {
    d_plus = std::min(d_plus, seq.at(n) - static_cast<double>(n) * delta_plus);
  }

  const double tie_tol = 1e-12 * (1.0 + std::abs(d_minus) + std::abs(d_plus));
  if (d_minus <= d_plus) {
    for (int n = 0; n >= n0; --n) {
      if (seq.at(n) - static_cast<double>(n) * delta_minus <= d_minus + tie_tol) {
        return n;
      }
    }
  } else {
    for (int n = 0; n <= n1; ++n) {
      if (seq.at(n) - static_cast<double>(n) * delta_plus <= d_plus + tie_tol) {
        return n;
      }
    }
  }
  throw std::logic_error("tangency point not found");  // unreachable
}

RealSeq extend_for_tangency(const RealSeq& seq, int n0, int n1,
                            double delta_minus, double delta_plus, int new_lo,
                            int new_hi) {
  if (!seq.contains(n0) || !seq.contains(n1)) {
    throw std::out_of_range("sequence must cover [n0, n1]");
  }
  if (new_lo > seq.lo() || new_hi < seq.hi()) {
    throw std::invalid_argument("extension must enlarge the window");
  }
  RealSeq out;
  out.offset = new_lo;
  out.values.reserve(static_cast<size_t>(new_hi - new_lo) + 1);
  for (int n = new_lo; n <= new_hi; ++n) {
    if (seq.contains(n)) {
      out.values.push_back(seq.at(n));
    } else if (n < seq.lo()) {
      out.values.push_back(seq.at(n0) + static_cast<double>(n - n0) * delta_minus);
    } else {
      out.values.push_back(seq.at(n1) + static_cast<double>(n - n1) * delta_plus);
    }
  }
  return out;
}

}  // namespace critic
