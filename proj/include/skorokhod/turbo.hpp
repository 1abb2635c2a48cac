#ifndef SKOROKHOD_TURBO_HPP
#define SKOROKHOD_TURBO_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "skorokhod/piecewise.hpp"

namespace skorokhod {

/// A pair (F, sigma): a cadlag function on the parameter interval and a time
/// change from the parameter interval onto the clock interval.
class Turbofunction {
 public:
  Turbofunction() = default;
  Turbofunction(CadlagFunction f, TimeChange sigma) : f_(std::move(f)), sigma_(std::move(sigma)) {}

  const CadlagFunction& F() const { return f_; }
  const TimeChange& sigma() const { return sigma_; }

  /// Membership in the continuous subspace.
  bool is_continuous() const { return f_.is_continuous(); }

  friend bool operator==(const Turbofunction&, const Turbofunction&) = default;

 private:
  CadlagFunction f_;
  TimeChange sigma_;
};

/// Reparametrization (F o g, sigma o g).
inline Turbofunction compose(const Turbofunction& x, const Homeomorphism& g) {
  return {compose(x.F(), g), compose(x.sigma(), g)};
}

/// f+ = (f, identity).
inline Turbofunction embed(const CadlagFunction& f) { return {f, TimeChange::identity()}; }

/// sigma^{-1}(s) = max{t : sigma(t) <= s}. Non-decreasing, right-continuous,
/// with a jump at the level of every flat piece of sigma.
inline CadlagFunction right_continuous_inverse(const TimeChange& sigma) {
  const auto& nd = sigma.nodes();
  std::vector<CadlagNode> out;
  std::size_t i = 0;
  while (i < nd.size()) {
    std::size_t j = i;
    while (j + 1 < nd.size() && nd[j + 1].s == nd[i].s) ++j;
    out.push_back({nd[i].s, nd[i].t, nd[j].t});
    i = j + 1;
  }
  return CadlagFunction(std::move(out));
}

/// F o sigma^{-1} with the right-continuous inverse; skips instantons.
inline CadlagFunction visualize(const Turbofunction& x) {
  const auto& sigma = x.sigma();
  const auto& F = x.F();
  const auto inv = right_continuous_inverse(sigma);
  auto flat_at = [&](double s) {
    const auto& nd = sigma.nodes();
    for (std::size_t k = 0; k + 1 < nd.size(); ++k) {
      if (nd[k].s == nd[k + 1].s && nd[k].s == s) return true;
    }
    return false;
  };
  // Levels of F's node times where sigma is not flat; there the preimage is
  // the node time itself, which interpolating sigma^{-1} may miss by an ulp.
  std::vector<std::pair<double, double>> exact;
  for (double t : F.times()) {
    const double s = sigma(t);
    if (!flat_at(s)) exact.emplace_back(s, t);
  }
  std::vector<double> grid;
  for (const auto& n : sigma.nodes()) grid.push_back(n.s);
  for (const auto& e : exact) grid.push_back(e.first);
  grid = detail::merge_times(std::move(grid));

  std::vector<CadlagNode> nodes;
  nodes.reserve(grid.size());
  for (double s : grid) {
    auto it = std::find_if(exact.begin(), exact.end(),
                           [&](const auto& e) { return std::abs(e.first - s) <= tolerance::merge_time; });
    double right, left;
    if (it != exact.end()) {
      right = F(it->second);
      left = it->second > 0.0 ? F.left_limit(it->second) : right;
    } else {
      right = F(inv(s));
      left = s > 0.0 ? F.left_limit(inv.left_limit(s)) : right;
    }
    nodes.push_back({s, s > 0.0 ? left : right, right});
  }
  return CadlagFunction(std::move(nodes));
}

struct Instanton {
  double s;
  double t_begin;
  double t_end;
  double value_min;
  double value_max;
  /// F restricted to [t_begin, t_end], rescaled affinely onto [0,1].
  CadlagFunction trace;
};

/// Restriction of f to [a,b] rescaled to [0,1]; the value at 1 is f(b).
inline CadlagFunction restrict_rescaled(const CadlagFunction& f, double a, double b) {
  std::vector<CadlagNode> nodes;
  nodes.push_back({0.0, f(a), f(a)});
  for (const auto& n : f.nodes()) {
    if (n.t > a && n.t < b) nodes.push_back({(n.t - a) / (b - a), n.left, n.right});
  }
  nodes.push_back({1.0, f.left_limit(b), f(b)});
  return CadlagFunction(std::move(nodes));
}

/// One instanton per maximal flat piece of sigma, ordered by level.
inline std::vector<Instanton> instantons(const Turbofunction& x) {
  const auto& nd = x.sigma().nodes();
  std::vector<Instanton> out;
  std::size_t i = 0;
  while (i < nd.size()) {
    std::size_t j = i;
    while (j + 1 < nd.size() && nd[j + 1].s == nd[i].s) ++j;
    if (j > i) {
      auto trace = restrict_rescaled(x.F(), nd[i].t, nd[j].t);
      out.push_back({nd[i].s, nd[i].t, nd[j].t, trace.min_value(), trace.max_value(),
                     std::move(trace)});
    }
    i = j + 1;
  }
  return out;
}

/// sigma_delta = (1 - delta) sigma + delta id, strictly increasing.
inline TimeChange sigma_delta(const TimeChange& sigma, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sigma_delta: delta must lie in (0,1)");
  std::vector<MapNode> nodes;
  for (const auto& n : sigma.nodes()) nodes.push_back({n.t, (1.0 - delta) * n.s + delta * n.t});
  return TimeChange(std::move(nodes));
}

/// Canonical representative under reparametrization plus collapse of
/// intervals on which both F and sigma are constant.
///
/// Every piece of the merged grid gets weight d(sigma) + |dF| (continuous
/// variation only). A maximal run of zero-weight pieces is collapsed to a
/// point unless F jumps at both of its ends (the left end counts as a jump at
/// t = 0), since then the constant value inside cannot survive a collapse;
/// such a protected run gets unit weight. The output is reparametrized by
/// the normalized cumulative weight.
inline Turbofunction canonicalize(const Turbofunction& x) {
  const auto& F = x.F();
  const auto& sigma = x.sigma();
  auto grid = F.times();
  const auto st = sigma.times();
  grid.insert(grid.end(), st.begin(), st.end());
  grid = detail::merge_times(std::move(grid));
  const std::size_t n = grid.size();

  std::vector<double> weight(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    weight[k] = (sigma(grid[k + 1]) - sigma(grid[k])) +
                std::abs(F.left_limit(grid[k + 1]) - F(grid[k]));
  }
  constexpr double zero = 1e-12;
  std::size_t k = 0;
  while (k + 1 < n) {
    if (weight[k] > zero) {
      ++k;
      continue;
    }
    std::size_t e = k;  // run of pieces [k, e]
    while (e + 1 < n - 1 && weight[e + 1] <= zero && !F.has_jump_at(grid[e + 1])) ++e;
    const double c = grid[k];
    const double d = grid[e + 1];
    const bool protect = (c == 0.0 || F.has_jump_at(c)) && F.has_jump_at(d);
    const double len = d - c;
    for (std::size_t q = k; q <= e; ++q) {
      weight[q] = protect ? (grid[q + 1] - grid[q]) / len : 0.0;
    }
    k = e + 1;
  }

  std::vector<double> cum(n, 0.0);
  for (std::size_t q = 0; q + 1 < n; ++q) cum[q + 1] = cum[q] + weight[q];
  const double total = cum.back();

  std::vector<CadlagNode> fnodes;
  std::vector<MapNode> snodes;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && weight[j] == 0.0) ++j;
    const double u = (i == 0) ? 0.0 : (j == n - 1 ? 1.0 : cum[i] / total);
    const double right = F(grid[j]);
    const double left = grid[i] > 0.0 ? F.left_limit(grid[i]) : right;
    fnodes.push_back({u, left, right});
    snodes.push_back({u, sigma(grid[i])});
    i = j + 1;
  }
  return {CadlagFunction(std::move(fnodes)), TimeChange(std::move(snodes))};
}

inline bool canonical_forms_equal(const Turbofunction& a, const Turbofunction& b,
                                  double tol = tolerance::compare) {
  return approx_equal(a.F(), b.F(), tol) && approx_equal(a.sigma(), b.sigma(), tol);
}

// ---------------------------------------------------------------------------
// The triangular family and its turbofunction limit.

inline void require_theta(double theta) {
  if (!(theta > 2.0)) throw DomainError("theta must be greater than 2");
}

/// g_theta(s) = (1 - |theta (s - 1/2)|)_+.
inline CadlagFunction g_theta_family(double theta) {
  require_theta(theta);
  const double w = 1.0 / theta;
  return CadlagFunction::continuous({{0.0, 0.0}, {0.5 - w, 0.0}, {0.5, 1.0}, {0.5 + w, 0.0}, {1.0, 0.0}});
}

/// Time change with nodes (0,0), (1/4, 1/2 - 1/theta), (3/4, 1/2 + 1/theta), (1,1).
inline TimeChange sigma_theta_family(double theta) {
  require_theta(theta);
  const double w = 1.0 / theta;
  return TimeChange{{0.0, 0.0}, {0.25, 0.5 - w}, {0.75, 0.5 + w}, {1.0, 1.0}};
}

/// Limit time change: flat at level 1/2 on [1/4, 3/4].
inline TimeChange sigma_limit() {
  return TimeChange{{0.0, 0.0}, {0.25, 0.5}, {0.75, 0.5}, {1.0, 1.0}};
}

/// (g_4, sigma) with the flat sigma above: one instanton at s = 1/2.
inline Turbofunction paper_limit() { return {g_theta_family(4.0), sigma_limit()}; }

}  // namespace skorokhod

#endif  // SKOROKHOD_TURBO_HPP
