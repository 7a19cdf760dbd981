#pragma once

// Piecewise linear functions on the real line with constant extension
// beyond the first and last breakpoint, plus the q-action functional
//
//   A_q(f) = integral over R of |f'(x)|^q dx   (finite q)
//   A_inf(f) = ess sup |f'|
//
// which is the smoothness budget everything else in this library is
// measured against.  Since f' is constant between breakpoints and zero
// outside them, A_q reduces to an exact finite sum over segments.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace osl {

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Sorted breakpoint list (u_1, v_1), ..., (u_m, v_m), u_i strictly
// increasing.  Evaluation interpolates linearly between neighbours,
// returns v_1 left of u_1 and v_m right of u_m.  The empty function is
// identically zero.
class BreakpointFunction {
 public:
  BreakpointFunction() = default;
  // Accepts points in any order; throws std::invalid_argument on a
  // duplicated x.
  explicit BreakpointFunction(std::vector<Breakpoint> points);

  double operator()(double x) const;

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  std::span<const Breakpoint> points() const { return points_; }
  double front_x() const { return points_.front().x; }
  double back_x() const { return points_.back().x; }

  friend bool operator==(const BreakpointFunction&,
                         const BreakpointFunction&) = default;

 private:
  std::vector<Breakpoint> points_;  // strictly increasing in x
};

struct ActionValue {
  double q = 2.0;    // exponent, may be +infinity
  double value = 0.0;
};

// Exact segment sum of |slope|^q * length (finite q), or max |slope|
// (q = inf).  Requires q >= 1.  Functions with fewer than two
// breakpoints have zero action.
ActionValue q_action(const BreakpointFunction& f, double q);

// Returns a copy of f with (x, y) added.  x must not already be a
// breakpoint.
BreakpointFunction insert_point(const BreakpointFunction& f, double x,
                                double y);

// Action-preserving rescale: maps f to x -> radius^-((q-1)/q) * f(radius*x).
// The q-action of the result equals the q-action of f exactly (up to
// rounding), which is what makes unit-radius games canonical.  Requires
// radius > 0 and finite q > 1.
BreakpointFunction scale(const BreakpointFunction& f, double radius, double q);

// Truncated integrals of the four witness derivatives that separate the
// smoothness classes from one another (1 <= q < r < inf):
//
//   identity   f'(x) = 1            on [-T, T]; in the sup-slope class,
//                                   q-integral 2T grows without bound
//   spike      slope 2^n on [n, n + 2^-n(q+1)],  n = 1..N; q-integral
//                                   1 - 2^-N stays below one while the
//                                   sup slope 2^N explodes
//   tail       f'(x) = (1+x)^-1/q   on [0, T]; q-integral log(1+T)
//                                   diverges, r-integral stays bounded
//   cusp       f'(x) = x^-1/r       on [1/T, 1]; r-integral log T
//                                   diverges, q-integral stays bounded
//
// so none of the finite-budget classes nest into each other.
struct WitnessIntegrals {
  std::string witness;
  double q_integral = 0.0;
  double r_integral = 0.0;
};

struct NonNestingReport {
  double q = 0.0;
  double r = 0.0;
  int spike_count = 0;
  double half_width = 0.0;
  std::array<WitnessIntegrals, 4> rows;
};

NonNestingReport nonnesting_witnesses(double q, double r, int spike_count = 40,
                                      double half_width = 1e6);

// JSON form: [[x, y], ...] in breakpoint order.
void to_json(nlohmann::json& j, const BreakpointFunction& f);
void from_json(const nlohmann::json& j, BreakpointFunction& f);

}  // namespace osl
