#pragma once

// Brute-force reference for the Skorokhod distance between step functions:
// minimize sup|f - g o w| + sup|w - id| over all strictly increasing
// piecewise-linear w whose nodes lie on the lattice {i/n} x {j/n}.
// Every such w is admissible, so the result never undercuts the true value.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "skorokhod/piecewise.hpp"

namespace oracle {

struct LatticeResult {
  double value;
  /// Provable gap to the true distance for jumps on a 1/8 grid: optimal
  /// paths can be tilted off horizontal or vertical pieces by one lattice
  /// step at each end.
  double slack;
};

namespace detail {

// sup over s in [t0, t1) of |f(s) - g(w(s))| with w affine from u0 to u1.
inline double segment_value_cost(const skorokhod::CadlagFunction& f, const skorokhod::CadlagFunction& g,
                                 const std::vector<double>& f_times, const std::vector<double>& g_times,
                                 double t0, double t1, double u0, double u1) {
  std::vector<double> cuts{t0, t1};
  for (double a : f_times)
    if (a > t0 && a < t1) cuts.push_back(a);
  for (double b : g_times)
    if (b > u0 && b < u1) cuts.push_back(t0 + (b - u0) / (u1 - u0) * (t1 - t0));
  std::sort(cuts.begin(), cuts.end());
  auto w = [&](double s) { return u0 + (s - t0) / (t1 - t0) * (u1 - u0); };
  double c = std::abs(f(t0) - g(u0));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    const double m = 0.5 * (cuts[k] + cuts[k + 1]);
    c = std::max(c, std::abs(f(m) - g(w(m))));
  }
  return c;
}

}  // namespace detail

inline LatticeResult lattice_step_distance(const skorokhod::CadlagFunction& f,
                                           const skorokhod::CadlagFunction& g, int n = 64) {
  std::vector<double> values;
  for (const auto& a : f.nodes())
    for (const auto& b : g.nodes())
      for (double x : {a.left, a.right})
        for (double y : {b.left, b.right}) values.push_back(std::abs(x - y));
  values.push_back(0.0);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::size_t nc = values.size();
  const auto f_times = f.times();
  const auto g_times = g.times();

  constexpr double inf = std::numeric_limits<double>::infinity();
  const int m = n + 1;
  // best[c][i*m + j]: least time cost reaching (i/n, j/n) with value cost <= values[c].
  std::vector<std::vector<double>> best(nc, std::vector<double>(static_cast<std::size_t>(m) * m, inf));
  for (auto& b : best) b[0] = 0.0;

  for (int i2 = 1; i2 <= n; ++i2) {
    for (int j2 = 1; j2 <= n; ++j2) {
      const double end_time = std::abs(i2 - j2) / static_cast<double>(n);
      for (int i1 = 0; i1 < i2; ++i1) {
        for (int j1 = 0; j1 < j2; ++j1) {
          if ((i1 == 0) != (j1 == 0)) continue;  // w(0) = 0
          const std::size_t from = static_cast<std::size_t>(i1) * m + j1;
          if (best[nc - 1][from] == inf) continue;
          const double vc = detail::segment_value_cost(f, g, f_times, g_times, i1 / double(n), i2 / double(n), j1 / double(n),
                                                       j2 / double(n));
          const double tc = std::max(end_time, std::abs(i1 - j1) / static_cast<double>(n));
          const std::size_t to = static_cast<std::size_t>(i2) * m + j2;
          for (std::size_t c = nc; c-- > 0;) {
            if (values[c] < vc) break;
            best[c][to] = std::min(best[c][to], std::max(best[c][from], tc));
          }
        }
      }
    }
  }
  const double end_gap = std::abs(f(1.0) - g(1.0));
  double answer = inf;
  for (std::size_t c = 0; c < nc; ++c) {
    if (values[c] < end_gap) continue;
    answer = std::min(answer, values[c] + best[c][static_cast<std::size_t>(m) * m - 1]);
  }
  return {answer, 2.0 / n};
}

}  // namespace oracle
