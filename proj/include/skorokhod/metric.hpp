#ifndef SKOROKHOD_METRIC_HPP
#define SKOROKHOD_METRIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "skorokhod/free_space.hpp"
#include "skorokhod/piecewise.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

/// Two-sided bound on an infimum-defined distance together with a time warp
/// whose objective is at most `upper`.
struct DistanceCertificate {
  double lower = 0.0;
  double upper = 0.0;
  Homeomorphism witness;
  /// Final spacing of the value-budget ladder (0 for the exact step solver).
  double grid_resolution = 0.0;
  bool exact = false;
  /// (upper, lower) after every refinement step.
  std::vector<std::pair<double, double>> history;

  double gap() const { return upper - lower; }
};

enum class Decision { feasible, infeasible };

/// Is there a warp w with sup|f - g o w| <= eps_value and
/// sup|w - id| <= eps_time (in the closure sense)? Exact for
/// piecewise-linear input.
inline Decision rho_decision(const CadlagFunction& f, const CadlagFunction& g, ThresholdQuery q) {
  return FreeSpace(embed(g), embed(f)).feasible(q) ? Decision::feasible : Decision::infeasible;
}

/// Two-budget decision for the turbofunction semi-distance. The grid lines
/// k*h are added to both axes; the answer is exact regardless of h.
inline Decision rho_plus_decision(const Turbofunction& x, const Turbofunction& y, ThresholdQuery q,
                                  double h) {
  if (!(h > 0.0)) throw DomainError("rho_plus_decision: grid resolution must be positive");
  return FreeSpace(x, y, h).feasible(q) ? Decision::feasible : Decision::infeasible;
}

struct BoundsOptions {
  /// Maximum number of rungs in the value-budget ladder.
  std::size_t max_rungs = 4096;
  /// Maximum halvings of the initial ladder spacing (Vmax / 16).
  int max_levels = 48;
  /// Extra grid lines passed to the decision procedure (0 = nodes only).
  double h = 0.0;
};

namespace detail {

inline std::vector<double> one_sided_values(const CadlagFunction& f) {
  std::vector<double> v;
  for (const auto& n : f.nodes()) {
    v.push_back(n.left);
    v.push_back(n.right);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<double> pairwise_gaps(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d{0.0};
  for (double x : a)
    for (double y : b) d.push_back(std::abs(x - y));
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

/// Bracket of eps_time*(eps_value) = min feasible time budget:
/// lo <= eps_time* <= hi and (eps_value, hi) is feasible.
struct Rung {
  double lo;
  double hi;
};

class Ladder {
 public:
  Ladder(const FreeSpace& fs, double width) : fs_(fs), width_(width) {}

  Rung evaluate(double ev, double lo, double hi) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (hi == inf) {
      if (!fs_.feasible({ev, 1.0})) return {inf, inf};
      hi = 1.0;
    }
    if (lo <= 0.0) {
      if (fs_.feasible({ev, 0.0})) return {0.0, 0.0};
      lo = 0.0;
    }
    while (hi - lo > width_) {
      const double mid = 0.5 * (lo + hi);
      if (fs_.feasible({ev, mid})) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return {lo, hi};
  }

 private:
  const FreeSpace& fs_;
  double width_;
};

}  // namespace detail

/// Certified bounds on the turbofunction semi-distance.
///
/// For every value budget eps_value the least feasible time budget
/// eps_time*(eps_value) is non-increasing, so on a ladder of value budgets
/// a_0 < a_1 < ... the sum is bracketed by
///   min_k a_k + eps_time*(a_{k+1})  <=  inf  <=  min_k a_k + eps_time*(a_k).
/// The rung interval holding the smallest lower bound is split until the
/// gap is below `tol` or the budget runs out.
inline DistanceCertificate rho_plus_bounds(const Turbofunction& x, const Turbofunction& y, double tol,
                                           const BoundsOptions& opt = {}) {
  if (!(tol > 0.0)) throw DomainError("rho_plus_bounds: tol must be positive");
  constexpr double inf = std::numeric_limits<double>::infinity();
  const FreeSpace fs(x, y, opt.h);
  const detail::Ladder ladder(fs, std::min(tol / 4.0, 1e-9));

  const double vmax = std::max({x.F().max_value() - y.F().min_value(),
                                y.F().max_value() - x.F().min_value(), 0.0});
  std::vector<double> seeds;
  for (int k = 0; k <= 16; ++k) seeds.push_back(vmax * k / 16.0);
  {
    auto gaps = detail::pairwise_gaps(detail::one_sided_values(x.F()), detail::one_sided_values(y.F()));
    if (gaps.size() <= 256) {
      for (double g : gaps)
        if (g <= vmax) seeds.push_back(g);
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::map<double, detail::Rung> rungs;
  // A feasible time budget stays feasible for larger value budgets, so each
  // rung starts from the bracket of the one below.
  for (double ev : seeds) {
    const double hi = rungs.empty() ? inf : rungs.rbegin()->second.hi;
    rungs.emplace(ev, ladder.evaluate(ev, 0.0, hi));
  }

  auto bounds = [&]() {
    double ub = inf, lb = inf, best_ev = 0.0, split_a = 0.0, split_b = 0.0;
    bool can_split = false;
    double best_interval_lb = inf;
    for (auto it = rungs.begin(); it != rungs.end(); ++it) {
      const double ev = it->first;
      if (ev + it->second.hi < ub) {
        ub = ev + it->second.hi;
        best_ev = ev;
      }
      auto nx = std::next(it);
      const double l = nx == rungs.end() ? ev + it->second.lo : ev + nx->second.lo;
      lb = std::min(lb, l);
      if (nx != rungs.end() && l < best_interval_lb) {
        best_interval_lb = l;
        split_a = ev;
        split_b = nx->first;
        can_split = true;
      }
    }
    return std::tuple{ub, lb, best_ev, split_a, split_b, can_split};
  };

  DistanceCertificate cert;
  auto [ub, lb, best_ev, a, b, can_split] = bounds();
  cert.history.emplace_back(ub, lb);
  const double base_spacing = vmax > 0.0 ? vmax / 16.0 : 0.0;
  double finest = base_spacing;
  while (ub - lb > tol && can_split && rungs.size() < opt.max_rungs) {
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;
    if (base_spacing > 0.0 && (b - a) < base_spacing * std::ldexp(1.0, -opt.max_levels)) break;
    finest = std::min(finest, b - a);
    rungs.emplace(m, ladder.evaluate(m, rungs.at(b).lo, rungs.at(a).hi));
    std::tie(ub, lb, best_ev, a, b, can_split) = bounds();
    cert.history.emplace_back(std::min(ub, cert.history.back().first),
                              std::max(lb, cert.history.back().second));
  }

  if (ub == inf) throw std::logic_error("rho_plus_bounds: no feasible warp found");
  const auto& best = rungs.at(best_ev);
  auto w = fs.witness({best_ev, best.hi});
  if (!w) throw std::logic_error("rho_plus_bounds: witness reconstruction failed");
  const double objective = warp_objective(x, y, *w);
  cert.witness = *w;
  cert.upper = std::max(ub, objective);
  cert.lower = std::min(std::max(lb, 0.0), cert.upper);
  cert.grid_resolution = finest;
  cert.exact = cert.upper - cert.lower <= 1e-9;
  return cert;
}

/// Bounds on the Skorokhod distance via the embedding f -> (f, id). The
/// witness w warps g: sup|f - g o w| + sup|w - id| <= upper.
inline DistanceCertificate rho_bounds(const CadlagFunction& f, const CadlagFunction& g, double tol,
                                      const BoundsOptions& opt = {}) {
  if (!(tol > 0.0)) throw DomainError("rho_bounds: tol must be positive");
  return rho_plus_bounds(embed(g), embed(f), tol, opt);
}

/// Exact Skorokhod distance between step functions.
///
/// The value budget only matters through the finitely many gaps |v_i - w_j|
/// between attained values, and for a fixed value budget feasibility only
/// changes at time budgets |a_i - b_j| between jump times. Both sets are
/// searched exactly; each time budget is double-checked against a 1e-10
/// bisection. Non-step input is routed to rho_bounds with exact = false.
inline DistanceCertificate rho_step_exact(const CadlagFunction& f, const CadlagFunction& g,
                                          double fallback_tol = 1e-6) {
  if (!f.is_step() || !g.is_step()) {
    auto c = rho_bounds(f, g, fallback_tol);
    c.exact = false;
    return c;
  }
  const auto x = embed(g);
  const auto y = embed(f);
  const FreeSpace fs(x, y);
  const auto value_budgets = detail::pairwise_gaps(detail::one_sided_values(f), detail::one_sided_values(g));
  auto time_budgets = detail::pairwise_gaps(f.times(), g.times());
  if (time_budgets.back() < 1.0) time_budgets.push_back(1.0);

  constexpr double inf = std::numeric_limits<double>::infinity();
  double best = inf;
  ThresholdQuery best_q;
  bool snapped = true;
  for (double ev : value_budgets) {
    if (ev > best) break;
    if (!fs.feasible({ev, 1.0})) continue;
    std::size_t lo = 0, hi = time_budgets.size() - 1;  // hi feasible
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (fs.feasible({ev, time_budgets[mid]})) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    double et = time_budgets[hi];
    if (et >= 1e-10 && fs.feasible({ev, et - 1e-10})) {
      // Critical budget outside the candidate set: fall back to bisection.
      snapped = false;
      double a = hi > 0 ? time_budgets[hi - 1] : 0.0, b = et;
      while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        (fs.feasible({ev, m}) ? b : a) = m;
      }
      et = b;
    }
    const double total = ev + et;
    if (total < best - 1e-15 || (std::abs(total - best) <= 1e-15 && et < best_q.eps_time)) {
      best = total;
      best_q = {ev, et};
    }
  }
  if (best == inf) throw std::logic_error("rho_step_exact: no feasible warp found");
  auto w = fs.witness(best_q);
  if (!w) throw std::logic_error("rho_step_exact: witness reconstruction failed");
  DistanceCertificate cert;
  const double objective = warp_objective(x, y, *w);
  cert.witness = *w;
  cert.lower = std::min(best, objective);
  cert.upper = std::max(best, objective);
  cert.grid_resolution = 0.0;
  cert.exact = snapped && cert.upper - cert.lower <= 1e-9;
  cert.history.emplace_back(cert.upper, cert.lower);
  return cert;
}

}  // namespace skorokhod

#endif  // SKOROKHOD_METRIC_HPP
