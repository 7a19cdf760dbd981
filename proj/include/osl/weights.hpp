#pragma once

// Per-round weights g(delta) applied to the loss as a function of the
// distance delta from the current input to its nearest predecessor.
// The registered shapes are the ones with closed-form extremal values;
// anything else comes in as a Custom callable or a tabulated curve.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace osl {

// Shared cutoff comparison for "distance within radius" decisions.  The
// canonical adversaries step at exactly unit distance, which floating
// point reproduces only to a few ulp, so the comparison carries a small
// absolute slack.  Scenario counting and the indicator weight must use
// the same predicate or they drift apart on boundary rounds.
inline bool within_cutoff(double z, double r) { return z <= r + 1e-9; }

class WeightFunction {
 public:
  enum class Kind { kIdentity, kExponential, kIndicator, kConstantOne, kCustom };

  WeightFunction();  // constant one

  static WeightFunction identity();            // g(z) = 1/z
  static WeightFunction exponential(double c); // g(z) = exp(-c z), c > 0
  static WeightFunction indicator();           // g(z) = 1 for z <= 1, else 0
  static WeightFunction constant_one();        // g(z) = 1
  // Arbitrary positive curve; the nonincreasing hint is spot-checked on
  // a log-spaced grid at construction.
  static WeightFunction custom(std::string label,
                               std::function<double(double)> fn,
                               bool nonincreasing_hint);
  // Piecewise-linear in z between the given (z, g) samples, constant
  // beyond the ends.
  static WeightFunction tabulated(std::string label,
                                  std::vector<std::pair<double, double>> pts,
                                  bool nonincreasing_hint);

  double operator()(double z) const;

  Kind kind() const { return kind_; }
  double exp_rate() const { return c_; }
  const std::string& label() const { return label_; }
  bool nonincreasing_hint() const { return noninc_; }

 private:
  Kind kind_ = Kind::kConstantOne;
  double c_ = 0.0;
  std::string label_;
  std::function<double(double)> fn_;
  bool noninc_ = true;
};

// sup over z > 0 of z * g(z).  This is exactly the optimal two-round
// penalty a weighted adversary can force at quadratic loss, so the
// closed forms here double as expected game values:
//   identity -> 1, exponential(c) -> 1/(c e) at z = 1/c, indicator -> 1,
//   constant one -> unbounded.
// Custom weights are maximised numerically (golden section after a
// log-grid scan, relative tolerance 1e-8).
struct SupSearch {
  double value = 0.0;
  double arg = 0.0;
  bool unbounded = false;
};

SupSearch sup_z_times_g(const WeightFunction& g);

// C_{g,h} = sup over z > 0 of h(z)/g(z); reweighing a transcript from g
// to h multiplies the loss by at most this constant.  Returns +infinity
// when the ratio is unbounded (the comparison is then vacuous).
// Requires g strictly positive.
double ratio_sup(const WeightFunction& g, const WeightFunction& h);

}  // namespace osl
