#ifndef SKOROKHOD_PIECEWISE_HPP
#define SKOROKHOD_PIECEWISE_HPP

// Piecewise-linear functions on [0,1]: cadlag functions with finitely many
// jumps, continuous non-decreasing time changes, and increasing
// homeomorphisms. Everything is immutable after construction.

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skorokhod {

namespace tolerance {
/// Node times closer than this are the same node. Kept far below the
/// comparison tolerance so that compositions with steep homeomorphisms keep
/// their short pieces (suprema over them matter).
inline constexpr double merge_time = 1e-13;
/// Values closer than this are snapped together during normalization.
inline constexpr double merge_value = 1e-12;
/// Tolerance for comparing canonical forms and normalized node lists.
inline constexpr double compare = 1e-9;
}  // namespace tolerance

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double lerp(double a, double b, double w) { return a + (b - a) * w; }

inline void check_time(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError(std::string(what) + ": time " + std::to_string(t) +
                      " outside [0,1]");
  }
}

/// Sorted, de-duplicated union of time lists (duplicates within merge_time).
inline std::vector<double> merge_times(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (out.empty() || t - out.back() > tolerance::merge_time) out.push_back(t);
  }
  return out;
}

}  // namespace detail

struct CadlagNode {
  double t;
  double left;   // lim_{u -> t-} f(u); ignored at t = 0
  double right;  // f(t)

  bool jumps() const { return left != right; }
  friend bool operator==(const CadlagNode&, const CadlagNode&) = default;
};

/// Piecewise-linear cadlag function on [0,1].
///
/// Between consecutive nodes the function is affine from the earlier node's
/// right value to the later node's left value. Jumps sit at nodes with
/// left != right. A jump at t = 1 is representable (the value at 1 is the
/// right value); the left value at t = 0 is forced equal to the right value.
class CadlagFunction {
 public:
  CadlagFunction() : CadlagFunction(constant(0.0)) {}

  explicit CadlagFunction(std::vector<CadlagNode> nodes) : nodes_(std::move(nodes)) {
    normalize();
  }

  static CadlagFunction constant(double v) {
    return CadlagFunction(std::vector<CadlagNode>{{0.0, v, v}, {1.0, v, v}});
  }

  /// Continuous piecewise-linear interpolant of (t, value) points.
  static CadlagFunction continuous(std::span<const double> times,
                                   std::span<const double> values) {
    if (times.size() != values.size()) {
      throw InvariantError("CadlagFunction: times/values size mismatch");
    }
    std::vector<CadlagNode> nodes;
    nodes.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      nodes.push_back({times[i], values[i], values[i]});
    }
    return CadlagFunction(std::move(nodes));
  }

  static CadlagFunction continuous(std::initializer_list<std::pair<double, double>> pts) {
    std::vector<CadlagNode> nodes;
    for (auto [t, v] : pts) nodes.push_back({t, v, v});
    return CadlagFunction(std::move(nodes));
  }

  /// Step function: value values[i] on [jumps[i-1], jumps[i]), with
  /// jumps = interior jump times (values.size() == jumps.size() + 1).
  static CadlagFunction step(std::span<const double> jump_times,
                             std::span<const double> values) {
    if (values.size() != jump_times.size() + 1) {
      throw InvariantError("CadlagFunction::step: need one more value than jump times");
    }
    std::vector<CadlagNode> nodes;
    nodes.push_back({0.0, values[0], values[0]});
    for (std::size_t i = 0; i < jump_times.size(); ++i) {
      nodes.push_back({jump_times[i], values[i], values[i + 1]});
    }
    nodes.push_back({1.0, values.back(), values.back()});
    return CadlagFunction(std::move(nodes));
  }

  static CadlagFunction step(std::initializer_list<double> jump_times,
                             std::initializer_list<double> values) {
    std::vector<double> j(jump_times), v(values);
    return step(std::span<const double>(j), std::span<const double>(v));
  }

  const std::vector<CadlagNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  double operator()(double t) const { return evaluate(t); }

  double evaluate(double t) const {
    detail::check_time(t, "evaluate");
    const std::size_t k = segment_of(t);
    if (nodes_[k].t == t) return nodes_[k].right;
    if (k + 1 < nodes_.size() && nodes_[k + 1].t == t) return nodes_[k + 1].right;
    return interior_value(k, t);
  }

  double left_limit(double t) const {
    detail::check_time(t, "left_limit");
    if (t == 0.0) throw DomainError("left_limit: no left limit at t = 0");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                               [](const CadlagNode& n, double x) { return n.t < x; });
    if (it != nodes_.end() && it->t == t) return it->left;
    const auto k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return interior_value(k, t);
  }

  bool is_step() const {
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
      if (nodes_[k].right != nodes_[k + 1].left) return false;
    }
    return true;
  }

  bool is_continuous() const {
    return std::none_of(nodes_.begin(), nodes_.end(),
                        [](const CadlagNode& n) { return n.jumps(); });
  }

  bool has_jump_at(double t) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                               [](const CadlagNode& n, double x) { return n.t < x; });
    return it != nodes_.end() && it->t == t && it->jumps();
  }

  std::vector<double> times() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.t);
    return out;
  }

  double min_value() const {
    double m = nodes_.front().right;
    for (const auto& n : nodes_) m = std::min({m, n.left, n.right});
    return m;
  }
  double max_value() const {
    double m = nodes_.front().right;
    for (const auto& n : nodes_) m = std::max({m, n.left, n.right});
    return m;
  }

  friend bool operator==(const CadlagFunction&, const CadlagFunction&) = default;

 private:
  // Index k with nodes_[k].t <= t < nodes_[k+1].t (k = size-2 for t = 1).
  std::size_t segment_of(double t) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double x, const CadlagNode& n) { return x < n.t; });
    auto k = static_cast<std::size_t>(it - nodes_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, nodes_.size() - 2);
  }

  double interior_value(std::size_t k, double t) const {
    const auto& a = nodes_[k];
    const auto& b = nodes_[k + 1];
    return detail::lerp(a.right, b.left, (t - a.t) / (b.t - a.t));
  }

  void normalize();

  std::vector<CadlagNode> nodes_;
};

inline void CadlagFunction::normalize() {
  if (nodes_.size() < 2) throw InvariantError("CadlagFunction: need at least two nodes");
  for (const auto& n : nodes_) {
    if (!std::isfinite(n.t) || !std::isfinite(n.left) || !std::isfinite(n.right)) {
      throw InvariantError("CadlagFunction: non-finite node");
    }
  }
  if (std::abs(nodes_.front().t) > tolerance::merge_time ||
      std::abs(nodes_.back().t - 1.0) > tolerance::merge_time) {
    throw InvariantError("CadlagFunction: first node must be at 0 and last at 1");
  }
  nodes_.front().t = 0.0;
  nodes_.back().t = 1.0;

  std::vector<CadlagNode> merged;
  merged.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    if (!merged.empty()) {
      if (n.t < merged.back().t - tolerance::merge_time) {
        throw InvariantError("CadlagFunction: node times must be increasing");
      }
      if (n.t - merged.back().t <= tolerance::merge_time) {
        merged.back().right = n.right;  // keep the outer one-sided values
        if (n.t == 1.0) merged.back().t = 1.0;
        continue;
      }
    }
    merged.push_back(n);
  }
  if (merged.size() < 2) throw InvariantError("CadlagFunction: degenerate node list");
  merged.front().left = merged.front().right;
  for (auto& n : merged) {
    if (std::abs(n.left - n.right) <= tolerance::merge_value) n.left = n.right;
  }

  // Drop interior nodes that neither jump nor bend.
  std::vector<CadlagNode> out;
  out.reserve(merged.size());
  out.push_back(merged.front());
  for (std::size_t i = 1; i + 1 < merged.size(); ++i) {
    const auto& m = merged[i];
    const auto& prev = out.back();
    const auto& next = merged[i + 1];
    if (!m.jumps()) {
      const double w = (m.t - prev.t) / (next.t - prev.t);
      const double interp = detail::lerp(prev.right, next.left, w);
      const double scale = 1.0 + std::abs(prev.right) + std::abs(next.left);
      if (std::abs(interp - m.right) <= tolerance::merge_value * scale) continue;
    }
    out.push_back(m);
  }
  out.push_back(merged.back());
  nodes_ = std::move(out);
}

struct MapNode {
  double t;
  double s;
  friend bool operator==(const MapNode&, const MapNode&) = default;
};

enum class Monotonicity { non_decreasing, strictly_increasing };

/// Continuous piecewise-linear surjection of [0,1] onto itself with
/// (0,0) and (1,1) as end nodes. `Strict` selects homeomorphisms.
template <Monotonicity Kind>
class MonotoneMap {
 public:
  MonotoneMap() : nodes_{{0.0, 0.0}, {1.0, 1.0}} {}

  explicit MonotoneMap(std::vector<MapNode> nodes) : nodes_(std::move(nodes)) { normalize(); }

  MonotoneMap(std::initializer_list<MapNode> nodes)
      : MonotoneMap(std::vector<MapNode>(nodes)) {}

  static MonotoneMap identity() { return MonotoneMap(); }

  const std::vector<MapNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  double operator()(double t) const { return evaluate(t); }

  double evaluate(double t) const {
    detail::check_time(t, "evaluate");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double x, const MapNode& n) { return x < n.t; });
    if (it == nodes_.end()) return nodes_.back().s;
    const auto& b = *it;
    const auto& a = *(it - 1);
    return detail::lerp(a.s, b.s, (t - a.t) / (b.t - a.t));
  }

  bool is_identity() const { return nodes_.size() == 2; }

  bool is_strictly_increasing() const {
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
      if (!(nodes_[k + 1].s > nodes_[k].s)) return false;
    }
    return true;
  }

  std::vector<double> times() const {
    std::vector<double> out;
    for (const auto& n : nodes_) out.push_back(n.t);
    return out;
  }

  CadlagFunction as_cadlag() const {
    std::vector<CadlagNode> nodes;
    nodes.reserve(nodes_.size());
    for (const auto& n : nodes_) nodes.push_back({n.t, n.s, n.s});
    return CadlagFunction(std::move(nodes));
  }

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

 private:
  void normalize();
  std::vector<MapNode> nodes_;
};

template <Monotonicity Kind>
void MonotoneMap<Kind>::normalize() {
  const char* name = Kind == Monotonicity::strictly_increasing ? "Homeomorphism" : "TimeChange";
  if (nodes_.size() < 2) throw InvariantError(std::string(name) + ": need at least two nodes");
  for (const auto& n : nodes_) {
    if (!std::isfinite(n.t) || !std::isfinite(n.s)) {
      throw InvariantError(std::string(name) + ": non-finite node");
    }
  }
  const auto& f = nodes_.front();
  const auto& l = nodes_.back();
  if (std::abs(f.t) > tolerance::merge_time || std::abs(f.s) > tolerance::merge_time ||
      std::abs(l.t - 1) > tolerance::merge_time || std::abs(l.s - 1) > tolerance::merge_time) {
    throw InvariantError(std::string(name) + ": end nodes must be (0,0) and (1,1)");
  }
  nodes_.front() = {0.0, 0.0};
  nodes_.back() = {1.0, 1.0};

  std::vector<MapNode> merged;
  merged.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    if (!merged.empty()) {
      const auto& p = merged.back();
      if (n.t < p.t - tolerance::merge_time) {
        throw InvariantError(std::string(name) + ": node times must be increasing");
      }
      if (n.t - p.t <= tolerance::merge_time) {
        if (std::abs(n.s - p.s) > tolerance::merge_value) {
          throw InvariantError(std::string(name) + ": discontinuity at t = " + std::to_string(n.t));
        }
        if (n.t == 1.0) merged.back() = n;
        continue;
      }
      if (n.s < p.s - tolerance::merge_value) {
        throw InvariantError(std::string(name) + ": values must be non-decreasing");
      }
    }
    merged.push_back(n);
  }
  if (merged.size() < 2) throw InvariantError(std::string(name) + ": degenerate node list");
  for (std::size_t i = 1; i < merged.size(); ++i) {
    merged[i].s = std::clamp(merged[i].s, merged[i - 1].s, 1.0);
  }
  merged.back().s = 1.0;
  if constexpr (Kind == Monotonicity::strictly_increasing) {
    for (std::size_t i = 1; i < merged.size(); ++i) {
      if (!(merged[i].s > merged[i - 1].s)) {
        throw InvariantError("Homeomorphism: values must be strictly increasing");
      }
    }
  }

  std::vector<MapNode> out;
  out.push_back(merged.front());
  for (std::size_t i = 1; i + 1 < merged.size(); ++i) {
    const auto& p = out.back();
    const auto& m = merged[i];
    const auto& nx = merged[i + 1];
    const double interp = detail::lerp(p.s, nx.s, (m.t - p.t) / (nx.t - p.t));
    // Only rounding-level collinearity: a node a hair off the chord may be what
    // keeps a jump of the composed function on the right side.
    if (std::abs(interp - m.s) <= 4 * std::numeric_limits<double>::epsilon()) continue;
    out.push_back(m);
  }
  out.push_back(merged.back());
  nodes_ = std::move(out);
}

using TimeChange = MonotoneMap<Monotonicity::non_decreasing>;
using Homeomorphism = MonotoneMap<Monotonicity::strictly_increasing>;

inline TimeChange as_time_change(const Homeomorphism& g) { return TimeChange(g.nodes()); }

/// Homeomorphism view of a time change; throws if it has a flat piece.
inline Homeomorphism as_homeomorphism(const TimeChange& s) { return Homeomorphism(s.nodes()); }

// ---------------------------------------------------------------------------
// Algebra

inline Homeomorphism invert(const Homeomorphism& g) {
  std::vector<MapNode> nodes;
  nodes.reserve(g.size());
  for (const auto& n : g.nodes()) nodes.push_back({n.s, n.t});
  return Homeomorphism(std::move(nodes));
}

/// Preimage g^{-1}(s) for a homeomorphism.
inline double preimage(const Homeomorphism& g, double s) {
  const auto& nd = g.nodes();
  auto it = std::lower_bound(nd.begin(), nd.end(), s,
                             [](const MapNode& n, double x) { return n.s < x; });
  if (it == nd.end()) return 1.0;
  if (it->s == s || it == nd.begin()) return it->t;
  const auto& a = *(it - 1);
  return detail::lerp(a.t, it->t, (s - a.s) / (it->s - a.s));
}

namespace detail {

/// Breakpoints (t, g(t)) of f o g: g's nodes and the g-preimages of the
/// outer node times. At a preimage the outer time is kept exactly, since
/// re-evaluating g there can land on the wrong side of a jump.
inline std::vector<MapNode> composition_grid(const std::vector<double>& outer_times,
                                             const Homeomorphism& g) {
  struct Point {
    double t, u;
  };
  std::vector<Point> pts;
  for (const auto& n : g.nodes()) pts.push_back({n.t, n.s});
  for (double u : outer_times) pts.push_back({preimage(g, u), u});
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.t < b.t; });
  std::vector<MapNode> out;
  for (const auto& p : pts) {
    if (!out.empty() && p.t - out.back().t <= tolerance::merge_time) {
      // Outer node times take precedence over g's own node images.
      if (p.u != out.back().s && std::binary_search(outer_times.begin(), outer_times.end(), p.u)) {
        out.back().s = p.u;
      }
      continue;
    }
    out.push_back({p.t, p.u});
  }
  out.front() = {0.0, 0.0};
  out.back() = {1.0, 1.0};
  return out;
}

}  // namespace detail

/// f o g, exact on the piecewise-linear structure.
inline CadlagFunction compose(const CadlagFunction& f, const Homeomorphism& g) {
  const auto grid = detail::composition_grid(f.times(), g);
  std::vector<CadlagNode> nodes;
  nodes.reserve(grid.size());
  for (const auto& [t, u] : grid) {
    const double right = f(u);
    const double left = t > 0.0 ? f.left_limit(u) : right;
    nodes.push_back({t, left, right});
  }
  return CadlagFunction(std::move(nodes));
}

template <Monotonicity Kind>
MonotoneMap<Kind> compose(const MonotoneMap<Kind>& outer, const Homeomorphism& g) {
  const auto grid = detail::composition_grid(outer.times(), g);
  std::vector<MapNode> nodes;
  nodes.reserve(grid.size());
  for (const auto& [t, u] : grid) nodes.push_back({t, outer(u)});
  return MonotoneMap<Kind>(std::move(nodes));
}

/// Exact sup_t |f(t) - g(t)| over [0,1], including left limits at jumps.
inline double sup_distance(const CadlagFunction& f, const CadlagFunction& g) {
  auto grid = f.times();
  const auto gt = g.times();
  grid.insert(grid.end(), gt.begin(), gt.end());
  grid = detail::merge_times(std::move(grid));
  double best = 0.0;
  for (double t : grid) {
    best = std::max(best, std::abs(f(t) - g(t)));
    if (t > 0.0) best = std::max(best, std::abs(f.left_limit(t) - g.left_limit(t)));
  }
  return best;
}

template <Monotonicity K1, Monotonicity K2>
double sup_distance(const MonotoneMap<K1>& a, const MonotoneMap<K2>& b) {
  return sup_distance(a.as_cadlag(), b.as_cadlag());
}

/// Total variation of f on [0,t]; jumps at times <= t are counted.
inline double total_variation(const CadlagFunction& f, double t) {
  detail::check_time(t, "total_variation");
  const auto& nd = f.nodes();
  double v = 0.0;
  for (std::size_t k = 0; k < nd.size(); ++k) {
    const auto& n = nd[k];
    if (n.t > t) break;
    if (k > 0) v += std::abs(n.right - n.left);
    if (k + 1 == nd.size()) break;
    const auto& m = nd[k + 1];
    if (m.t <= t) {
      v += std::abs(m.left - n.right);
    } else {
      v += std::abs(detail::lerp(n.right, m.left, (t - n.t) / (m.t - n.t)) - n.right);
      break;
    }
  }
  return v;
}

/// Node-wise comparison of normalized functions within `tol`.
inline bool approx_equal(const CadlagFunction& a, const CadlagFunction& b,
                         double tol = tolerance::compare) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.nodes()[i];
    const auto& y = b.nodes()[i];
    if (std::abs(x.t - y.t) > tol || std::abs(x.left - y.left) > tol ||
        std::abs(x.right - y.right) > tol) {
      return false;
    }
  }
  return true;
}

template <Monotonicity K>
bool approx_equal(const MonotoneMap<K>& a, const MonotoneMap<K>& b,
                  double tol = tolerance::compare) {
  // Maps are continuous, so the graphs are compared; the node lists may
  // differ by nodes that sit within rounding of a chord.
  return sup_distance(a, b) <= tol;
}

}  // namespace skorokhod

#endif  // SKOROKHOD_PIECEWISE_HPP
