#ifndef SKOROKHOD_FREE_SPACE_HPP
#define SKOROKHOD_FREE_SPACE_HPP

// Two-budget decision procedure for warped distances between
// turbofunctions.
//
// For x = (F1, s1) and y = (F2, s2) the question is whether some increasing
// homeomorphism g (from y's parameter to x's parameter) satisfies
//
//   sup_t |F1(g(t)) - F2(t)| <= eps_value,   sup_t |s1(g(t)) - s2(t)| <= eps_time
//
// up to arbitrarily small slack. The graph of g is a monotone path in the
// unit square. Cutting the square along all node times of x (rows) and y
// (columns) gives cells in which all four functions are affine, so the set
// of admissible points of a cell's closure is an intersection of strips:
// convex. Reachability therefore propagates as the lowest reachable point of
// each left edge and the leftmost reachable point of each bottom edge, and
// the answer is exact for piecewise-linear data.
//
// Crossing a grid line is checked against the closures of the cells on both
// sides, which accounts for left limits at jumps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skorokhod/piecewise.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

/// Budgets for the two summands of the warped distance.
struct ThresholdQuery {
  double eps_value = 0.0;
  double eps_time = 0.0;

  ThresholdQuery() = default;
  ThresholdQuery(double v, double t) : eps_value(v), eps_time(t) {
    if (!(std::isfinite(v) && std::isfinite(t) && v >= 0.0 && t >= 0.0)) {
      throw InvariantError("ThresholdQuery: budgets must be finite and non-negative");
    }
  }
};

namespace detail {

struct Interval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
};

inline Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

/// Sub-interval of [lo, hi] where the affine function running from a0 (at lo)
/// to a1 (at hi) stays within eps of c.
inline Interval close_to(double a0, double a1, double lo, double hi, double c, double eps) {
  const double d = a1 - a0;
  if (d == 0.0) return std::abs(a0 - c) <= eps ? Interval{lo, hi} : Interval{};
  double w1 = (c - eps - a0) / d;
  double w2 = (c + eps - a0) / d;
  if (w1 > w2) std::swap(w1, w2);
  w1 = std::max(w1, 0.0);
  w2 = std::min(w2, 1.0);
  if (w1 > w2) return {};
  return {lo + (hi - lo) * w1, w2 >= 1.0 ? hi : lo + (hi - lo) * w2};
}

/// One side of the free space: grid lines with the one-sided values of F and
/// the value of sigma on each line.
struct Axis {
  std::vector<double> lines;
  std::vector<double> f_right;
  std::vector<double> f_left;
  std::vector<double> s;

  Axis(const Turbofunction& x, double h) {
    std::vector<double> t = x.F().times();
    const auto st = x.sigma().times();
    t.insert(t.end(), st.begin(), st.end());
    if (h > 0.0) {
      const auto steps = static_cast<long>(std::ceil(1.0 / h - 1e-9));
      for (long k = 1; k < steps; ++k) t.push_back(static_cast<double>(k) * h);
    }
    lines = merge_times(std::move(t));
    for (double u : lines) {
      f_right.push_back(x.F()(u));
      f_left.push_back(u > 0.0 ? x.F().left_limit(u) : x.F()(u));
      s.push_back(x.sigma()(u));
    }
  }

  std::size_t cells() const { return lines.size() - 1; }
};

}  // namespace detail

class FreeSpace {
 public:
  /// `x` is the warped side (rows), `y` the reference side (columns).
  /// `h` > 0 adds the lines k*h to both axes; it never changes the answer.
  FreeSpace(const Turbofunction& x, const Turbofunction& y, double h = 0.0)
      : rows_(x, h), cols_(y, h) {}

  std::size_t cell_count() const { return rows_.cells() * cols_.cells(); }

  bool feasible(ThresholdQuery q) const { return propagate(q).reachable; }

  /// A strictly increasing witness if the query is feasible. Its objective
  /// may exceed the budgets by a few 1e-11 times the slopes involved.
  std::optional<Homeomorphism> witness(ThresholdQuery q) const {
    auto r = propagate(q);
    if (!r.reachable) return std::nullopt;
    return reconstruct(r);
  }

 private:
  enum class From : std::uint8_t { none, start, left_cell, lower_cell, diagonal };

  struct Reach {
    std::size_t nt = 0, nu = 0;
    std::vector<double> left_lo;    // lowest reachable u on the left edge
    std::vector<double> bottom_lo;  // leftmost reachable t on the bottom edge
    std::vector<From> left_from;
    std::vector<From> bottom_from;
    bool reachable = false;

    std::size_t at(std::size_t i, std::size_t j) const { return i * nu + j; }
  };

  static constexpr double inf = std::numeric_limits<double>::infinity();

  static double slack(double eps) { return eps + 1e-12 * (1.0 + eps); }

  // Free u-interval on the vertical line t = T_i within row j, where the
  // y-side values on that line are (fy, sy).
  detail::Interval vertical(std::size_t j, double fy, double sy, ThresholdQuery q) const {
    const double u0 = rows_.lines[j], u1 = rows_.lines[j + 1];
    auto a = detail::close_to(rows_.f_right[j], rows_.f_left[j + 1], u0, u1, fy, slack(q.eps_value));
    if (a.empty()) return a;
    return detail::intersect(a, detail::close_to(rows_.s[j], rows_.s[j + 1], u0, u1, sy, slack(q.eps_time)));
  }

  // Free t-interval on the horizontal line u = U_j within column i.
  detail::Interval horizontal(std::size_t i, double fx, double sx, ThresholdQuery q) const {
    const double t0 = cols_.lines[i], t1 = cols_.lines[i + 1];
    auto a = detail::close_to(cols_.f_right[i], cols_.f_left[i + 1], t0, t1, fx, slack(q.eps_value));
    if (a.empty()) return a;
    return detail::intersect(a, detail::close_to(cols_.s[i], cols_.s[i + 1], t0, t1, sx, slack(q.eps_time)));
  }

  bool point_free(double fx, double sx, double fy, double sy, ThresholdQuery q) const {
    return std::abs(fx - fy) <= slack(q.eps_value) && std::abs(sx - sy) <= slack(q.eps_time);
  }

  Reach propagate(ThresholdQuery q) const {
    Reach r;
    r.nt = cols_.cells();
    r.nu = rows_.cells();
    const std::size_t n = r.nt * r.nu;
    r.left_lo.assign(n, inf);
    r.bottom_lo.assign(n, inf);
    r.left_from.assign(n, From::none);
    r.bottom_from.assign(n, From::none);

    if (!point_free(rows_.f_right[0], 0.0, cols_.f_right[0], 0.0, q)) return r;
    r.left_lo[0] = 0.0;
    r.bottom_lo[0] = 0.0;
    r.left_from[0] = From::start;
    r.bottom_from[0] = From::start;

    const auto& T = cols_.lines;
    const auto& U = rows_.lines;
    for (std::size_t i = 0; i < r.nt; ++i) {
      for (std::size_t j = 0; j < r.nu; ++j) {
        const std::size_t c = r.at(i, j);
        const bool has_left = r.left_lo[c] < inf;
        const bool has_bottom = r.bottom_lo[c] < inf;
        if (!has_left && !has_bottom) continue;
        const double umin = has_bottom ? U[j] : r.left_lo[c];
        const double tmin = has_left ? T[i] : r.bottom_lo[c];

        if (i + 1 < r.nt) {
          auto e = vertical(j, cols_.f_left[i + 1], cols_.s[i + 1], q);
          if (!e.empty()) e = detail::intersect(e, vertical(j, cols_.f_right[i + 1], cols_.s[i + 1], q));
          e.lo = std::max(e.lo, umin);
          const std::size_t d = r.at(i + 1, j);
          if (!e.empty() && e.lo < r.left_lo[d]) {
            r.left_lo[d] = e.lo;
            r.left_from[d] = From::left_cell;
          }
        }
        if (j + 1 < r.nu) {
          auto e = horizontal(i, rows_.f_left[j + 1], rows_.s[j + 1], q);
          if (!e.empty()) e = detail::intersect(e, horizontal(i, rows_.f_right[j + 1], rows_.s[j + 1], q));
          e.lo = std::max(e.lo, tmin);
          const std::size_t d = r.at(i, j + 1);
          if (!e.empty() && e.lo < r.bottom_lo[d]) {
            r.bottom_lo[d] = e.lo;
            r.bottom_from[d] = From::lower_cell;
          }
        }
        if (i + 1 < r.nt && j + 1 < r.nu &&
            point_free(rows_.f_left[j + 1], rows_.s[j + 1], cols_.f_left[i + 1], cols_.s[i + 1], q) &&
            point_free(rows_.f_right[j + 1], rows_.s[j + 1], cols_.f_right[i + 1], cols_.s[i + 1], q)) {
          const std::size_t d = r.at(i + 1, j + 1);
          if (U[j + 1] < r.left_lo[d]) {
            r.left_lo[d] = U[j + 1];
            r.left_from[d] = From::diagonal;
          }
          if (T[i + 1] < r.bottom_lo[d]) {
            r.bottom_lo[d] = T[i + 1];
            r.bottom_from[d] = From::diagonal;
          }
        }
      }
    }
    const std::size_t last = r.at(r.nt - 1, r.nu - 1);
    const std::size_t kt = T.size() - 1, ku = U.size() - 1;
    r.reachable = (r.left_lo[last] < inf || r.bottom_lo[last] < inf) &&
                  point_free(rows_.f_left[ku], 1.0, cols_.f_left[kt], 1.0, q) &&
                  point_free(rows_.f_right[ku], 1.0, cols_.f_right[kt], 1.0, q);
    return r;
  }

  enum class Kind : std::uint8_t { fixed, flexible_u, flexible_t };

  struct Vertex {
    double t, u;
    Kind kind;
    double limit;  // upper bound for the flexible coordinate
  };

  Homeomorphism reconstruct(const Reach& r) const {
    const auto& T = cols_.lines;
    const auto& U = rows_.lines;
    constexpr double eta = 1e-11;

    std::vector<Vertex> path{{1.0, 1.0, Kind::fixed, 1.0}};
    std::size_t i = r.nt - 1, j = r.nu - 1;
    From exit = From::diagonal;  // the terminal corner accepts any entry
    while (true) {
      const std::size_t c = r.at(i, j);
      const bool has_left = r.left_lo[c] < inf;
      const bool has_bottom = r.bottom_lo[c] < inf;
      const bool use_left = exit == From::lower_cell ? has_left : !has_bottom;
      const From from = use_left ? r.left_from[c] : r.bottom_from[c];
      if (from == From::start) break;
      if (from == From::diagonal) {
        path.push_back({T[i], U[j], Kind::fixed, 0.0});
        --i;
        --j;
      } else if (use_left) {
        // Entered through the left edge: a vertical line crossing in row j.
        path.push_back({T[i], r.left_lo[c], Kind::flexible_u, U[j + 1] - eta});
        --i;
      } else {
        path.push_back({r.bottom_lo[c], U[j], Kind::flexible_t, T[i + 1] - eta});
        --j;
      }
      exit = from;
    }
    path.push_back({0.0, 0.0, Kind::fixed, 0.0});
    std::reverse(path.begin(), path.end());

    // Keep crossings inside the half-open cell they enter, then make both
    // coordinates strictly increasing.
    for (auto& v : path) {
      if (v.kind == Kind::flexible_u) v.u = std::min(v.u, v.limit);
      if (v.kind == Kind::flexible_t) v.t = std::min(v.t, v.limit);
    }
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      auto& v = path[k];
      if (v.kind == Kind::flexible_u && v.u <= path[k - 1].u) v.u = path[k - 1].u + eta;
      if (v.kind == Kind::flexible_t && v.t <= path[k - 1].t) v.t = path[k - 1].t + eta;
    }
    for (std::size_t k = path.size() - 2; k >= 1; --k) {
      auto& v = path[k];
      if (v.kind == Kind::flexible_u && v.u >= path[k + 1].u) v.u = path[k + 1].u - eta;
      if (v.kind == Kind::flexible_t && v.t >= path[k + 1].t) v.t = path[k + 1].t - eta;
    }
    std::vector<MapNode> nodes;
    nodes.reserve(path.size());
    for (const auto& v : path) {
      if (!nodes.empty() && !(v.t > nodes.back().t && v.u > nodes.back().s)) {
        throw std::logic_error("FreeSpace: could not build a strictly increasing witness");
      }
      nodes.push_back({v.t, v.u});
    }
    return Homeomorphism(std::move(nodes));
  }

  detail::Axis rows_;
  detail::Axis cols_;
};

/// sup_t |F1(g(t)) - F2(t)| + sup_t |s1(g(t)) - s2(t)|, computed exactly.
inline double warp_objective(const Turbofunction& x, const Turbofunction& y, const Homeomorphism& g) {
  return sup_distance(compose(x.F(), g), y.F()) +
         sup_distance(compose(x.sigma(), g).as_cadlag(), y.sigma().as_cadlag());
}

/// The two summands of warp_objective separately.
inline std::pair<double, double> warp_components(const Turbofunction& x, const Turbofunction& y,
                                                 const Homeomorphism& g) {
  return {sup_distance(compose(x.F(), g), y.F()),
          sup_distance(compose(x.sigma(), g).as_cadlag(), y.sigma().as_cadlag())};
}

}  // namespace skorokhod

#endif  // SKOROKHOD_FREE_SPACE_HPP
