#pragma once

// Test-side oracles.  Each one recomputes a library quantity through a
// different algorithm (quadrature instead of segment sums, grid search
// instead of golden-section, candidate enumeration instead of segment
// algebra) so a shared bug cannot cancel out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "osl/pwl.hpp"
#include "osl/weights.hpp"

namespace osl::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

// Midpoint-rule approximation of the q-action from point evaluations
// only.  Cells straddling a breakpoint see the chord slope, so the
// result is a close lower-biased estimate, not an exact value.
inline double quadrature_action(const BreakpointFunction& f, double q,
                                int cells = 1 << 17) {
  if (f.size() < 2) return 0.0;
  const double lo = f.front_x();
  const double h = (f.back_x() - lo) / cells;
  double sum = 0.0;
  double worst = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double mid = lo + (i + 0.5) * h;
    const double slope = (f(mid + h / 2.0) - f(mid - h / 2.0)) / h;
    if (std::isinf(q)) {
      worst = std::max(worst, std::abs(slope));
    } else {
      sum += std::pow(std::abs(slope), q) * h;
    }
  }
  return std::isinf(q) ? worst : sum;
}

// Knots sit on a jittered grid so adjacent gaps never collapse; the
// quadrature comparison needs slopes to stay well clear of the cell
// size.
inline BreakpointFunction random_pwl(std::mt19937_64& rng, int knots,
                                     double width = 10.0, double amp = 2.0) {
  const double cell = width / knots;
  std::uniform_real_distribution<double> jitter(0.0, 0.7 * cell);
  std::uniform_real_distribution<double> uy(-amp, amp);
  std::vector<Breakpoint> pts;
  for (int i = 0; i < knots; ++i) {
    pts.push_back({i * cell + jitter(rng), uy(rng)});
  }
  return BreakpointFunction(std::move(pts));
}

// Values rescaled so the q-action is exactly `budget`.
inline BreakpointFunction with_action(const BreakpointFunction& f, double q,
                                      double budget) {
  const double action = q_action(f, q).value;
  if (action == 0.0) return f;
  const double s = std::pow(budget / action, 1.0 / q);
  std::vector<Breakpoint> pts(f.points().begin(), f.points().end());
  for (auto& p : pts) p.y *= s;
  return BreakpointFunction(std::move(pts));
}

// Dense log-grid lower bound for sup_z z*g(z).
inline double grid_sup_zg(const WeightFunction& g, int points = 200001) {
  const double llo = std::log(1e-9);
  const double lhi = std::log(1e9);
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double z = std::exp(llo + (lhi - llo) * i / (points - 1));
    best = std::max(best, z * g(z));
  }
  return best;
}

// Largest |f1 - f2| within distance 1 of an agreement point, found by
// enumerating agreement candidates per segment of the merged grid and
// then checking kinks and interval ends (both exact maximisers of a
// piecewise linear function).
inline double oracle_m_value(const BreakpointFunction& f1,
                             const BreakpointFunction& f2) {
  std::vector<double> grid;
  for (const auto& p : f1.points()) grid.push_back(p.x);
  for (const auto& p : f2.points()) grid.push_back(p.x);
  if (grid.empty()) return 0.0;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.insert(grid.begin(), grid.front() - 2.0);
  grid.push_back(grid.back() + 2.0);

  const auto d = [&](double x) { return f1(x) - f2(x); };
  std::vector<double> agreements;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i];
    const double b = grid[i + 1];
    const double da = d(a);
    const double db = d(b);
    if (da == 0.0) agreements.push_back(a);
    if (db == 0.0) agreements.push_back(b);
    if (da == 0.0 && db == 0.0) {
      for (double t = a; t < b; t += 0.5) agreements.push_back(t);
    } else if ((da < 0.0) != (db < 0.0) && da != 0.0 && db != 0.0) {
      agreements.push_back(a + (b - a) * (-da) / (db - da));
    }
  }

  double m = 0.0;
  for (double a : agreements) {
    m = std::max({m, std::abs(d(a - 1.0)), std::abs(d(a + 1.0))});
    for (double x : grid) {
      if (x >= a - 1.0 && x <= a + 1.0) m = std::max(m, std::abs(d(x)));
    }
  }
  return m;
}

}  // namespace osl::testing
