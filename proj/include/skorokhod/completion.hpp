#ifndef SKOROKHOD_COMPLETION_HPP
#define SKOROKHOD_COMPLETION_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "skorokhod/metric.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

/// Raised when the gap bounds of a sequence are too large for the requested
/// tolerance.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite prefix of a Cauchy sequence with certified consecutive gaps:
/// gap_bound(k) is an upper bound of the distance between items k and k+1.
class CauchySequence {
 public:
  explicit CauchySequence(std::vector<Turbofunction> items, double certify_tol = 1e-6)
      : items_(std::move(items)) {
    if (items_.empty()) throw InvariantError("CauchySequence: needs at least one item");
    for (std::size_t k = 0; k + 1 < items_.size(); ++k) {
      gaps_.push_back(rho_plus_bounds(items_[k], items_[k + 1], certify_tol).upper);
    }
  }

  const std::vector<Turbofunction>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  double gap_bound(std::size_t k) const { return gaps_.at(k); }
  const std::vector<double>& gap_bounds() const { return gaps_; }

  /// Sum of the gap bounds from item k to the last item.
  double tail(std::size_t k) const {
    double s = 0.0;
    for (std::size_t j = k; j < gaps_.size(); ++j) s += gaps_[j];
    return s;
  }

 private:
  std::vector<Turbofunction> items_;
  std::vector<double> gaps_;
};

struct LimitReport {
  Turbofunction limit;
  /// Tail of the gap bounds after the last used item plus accumulated
  /// witness slack.
  double residual = 0.0;
  std::size_t levels_used = 0;
  bool continuous = false;
  /// Indices n_1 < n_2 < ... of the chosen subsequence.
  std::vector<std::size_t> subsequence;
  /// upper - lower of each pair certificate along the subsequence.
  std::vector<double> witness_slack;
};

/// Limit of a Cauchy prefix by composing near-optimal warps along a fast
/// subsequence. Each warp g_k matches item n_{k+1} against item n_k, and
/// lambda_{k+1} = g_k o lambda_k, so (F_{n_k} o lambda_k, sigma_{n_k} o lambda_k)
/// converges uniformly.
inline LimitReport cauchy_limit(const CauchySequence& seq, double tol) {
  if (!(tol > 0.0)) throw DomainError("cauchy_limit: tol must be positive");
  const auto& items = seq.items();
  // A finite prefix says nothing about what follows it; the last gap is the
  // only evidence that the sequence has settled at the scale of tol.
  if (!seq.gap_bounds().empty() && !(seq.gap_bounds().back() < tol)) {
    throw RefusalError("cauchy_limit: last certified gap " + std::to_string(seq.gap_bounds().back()) +
                       " is not below tol = " + std::to_string(tol));
  }

  LimitReport rep;
  rep.continuous = true;
  for (const auto& x : items) rep.continuous = rep.continuous && x.is_continuous();

  std::size_t n = 0;
  rep.subsequence.push_back(0);
  Homeomorphism lambda;
  double slack = 0.0;
  int level = 1;
  while (seq.tail(n) + slack > tol && n + 1 < items.size()) {
    // Next index whose tail falls below 2^{-(level+1)}, or the last one.
    std::size_t m = n + 1;
    while (m + 1 < items.size() && seq.tail(m) >= std::ldexp(1.0, -(level + 1))) ++m;
    const double pair_tol = std::max(tol * std::ldexp(1.0, -(level + 3)), 1e-12);
    const auto cert = rho_plus_bounds(items[m], items[n], pair_tol);
    slack += cert.upper - cert.lower;
    rep.witness_slack.push_back(cert.upper - cert.lower);
    lambda = compose(cert.witness, lambda);
    n = m;
    rep.subsequence.push_back(n);
    ++level;
  }
  rep.residual = seq.tail(n) + slack;
  if (rep.residual > tol) {
    throw RefusalError("cauchy_limit: residual " + std::to_string(rep.residual) + " exceeds tol");
  }
  rep.limit = compose(items[n], lambda);
  rep.levels_used = rep.subsequence.size();
  return rep;
}

enum class PointClass { endpoint, good, exceptional };

inline const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::endpoint: return "endpoint";
    case PointClass::good: return "good";
    case PointClass::exceptional: return "exceptional";
  }
  return "?";
}

struct PointReport {
  double s = 0.0;
  PointClass cls = PointClass::good;
  /// |visualize(item_k)(s) - visualize(limit)(s)|; empty for exceptional s.
  std::vector<double> deviations;
  /// Largest deviation over the second half of the sequence.
  double tail_max = 0.0;
  /// Deviations are non-increasing over the second half and end below tol.
  bool converges = false;
};

/// Classification of s against the limit: s is exceptional when sigma is
/// flat at level s or F jumps at sigma^{-1}(s).
inline PointClass classify_point(const Turbofunction& limit, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("pointwise_check: s outside [0,1]");
  if (s == 1.0) return PointClass::endpoint;
  const auto& nd = limit.sigma().nodes();
  for (std::size_t k = 0; k + 1 < nd.size(); ++k) {
    if (nd[k].s == nd[k + 1].s && std::abs(nd[k].s - s) <= tolerance::merge_value) {
      return PointClass::exceptional;
    }
  }
  const double t = right_continuous_inverse(limit.sigma())(s);
  return limit.F().has_jump_at(t) ? PointClass::exceptional : PointClass::good;
}

inline std::vector<PointReport> pointwise_check(const CauchySequence& seq, const Turbofunction& limit,
                                                const std::vector<double>& s_grid, double tol = 1e-6) {
  std::vector<CadlagFunction> views;
  for (const auto& x : seq.items()) views.push_back(visualize(x));
  const auto target = visualize(limit);

  std::vector<PointReport> out;
  for (double s : s_grid) {
    PointReport r;
    r.s = s;
    r.cls = classify_point(limit, s);
    if (r.cls != PointClass::exceptional) {
      for (const auto& v : views) r.deviations.push_back(std::abs(v(s) - target(s)));
      const std::size_t half = r.deviations.size() / 2;
      bool monotone = true;
      for (std::size_t k = half; k < r.deviations.size(); ++k) {
        r.tail_max = std::max(r.tail_max, r.deviations[k]);
        if (k > half && r.deviations[k] > r.deviations[k - 1] + 1e-12) monotone = false;
      }
      r.converges = monotone && r.deviations.back() <= tol;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace skorokhod

#endif  // SKOROKHOD_COMPLETION_HPP
