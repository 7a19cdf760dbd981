#pragma once

// Adversary constructions.  Each one certifies itself after the game:
// the labels it revealed must trace a function of the class it
// advertises, otherwise the forced loss means nothing.
//
// Shared label rule: when two candidate labels are available, reveal
// the one farther from the learner's guess, breaking ties towards the
// larger label.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "osl/classes.hpp"
#include "osl/engine.hpp"

namespace osl {

double pick_farther(const std::vector<double>& candidates, double y_hat);

// Walks x_i = x_{i-1} + c^i so every step dwarfs the history, and lifts
// the label by h or not, whichever hurts more.  The interpolant spends
// h^q / (c^(q-1) - 1) of the q-action budget in total, so any
// h <= (c^(q-1) - 1)^(1/q) stays admissible while the learner bleeds at
// least (h/2)^p per round.  Pointless under s1 (every delta explodes).
struct GeometricEscapeParams {
  double c = 2.0;        // step growth, > 1
  double q = 2.0;        // smoothness budget exponent, finite > 1
  double h = 0.0;        // label step; 0 means the largest admissible
  std::size_t steps = 100;
};

class GeometricEscapeAdversary : public Adversary {
 public:
  explicit GeometricEscapeAdversary(GeometricEscapeParams params);

  static double max_step_height(double c, double q);

  std::string name() const override { return "geometric_escape"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  bool s1_admissible() const override { return false; }
  const SmoothClass* target_class() const override { return &cls_; }

  double step_height() const { return params_.h; }
  double step_distance(std::size_t t) const;  // c^t

 protected:
  GeometricEscapeParams params_;
  SmoothClass cls_;
  double x_ = 0.0;
  double y_ = 0.0;
  std::vector<Breakpoint> revealed_;
};

// Same walk, paired with the weight the s3 game will apply.  The
// weighted loss floor is (h/2)^p * sum_i g(c^i); it diverges with the
// horizon whenever the weight decays slower than geometrically.
class SlowDecayEscapeAdversary final : public GeometricEscapeAdversary {
 public:
  SlowDecayEscapeAdversary(GeometricEscapeParams params, WeightFunction g);

  std::string name() const override { return "slow_decay_escape"; }

  double expected_floor(double p) const;
  // Heuristic: geometric decay of g(c^i) over the planned steps means
  // the floor converges and the construction stops paying off.
  bool weight_looks_summable() const;

 private:
  WeightFunction g_;
};

// Unit steps x_i = i with labels nudged +-eps, eps = steps^(-1/q), so
// the final interpolant spends the budget exactly (steps * eps^q = 1)
// while any learner concedes steps * (eps/2)^p.  For p < q that grows
// like steps^(1-p/q); at p = q it pins the unit constant from below.
struct EpsStepParams {
  std::size_t steps = 1000;
  double p = 2.0;  // 0 < p <= q
  double q = 3.0;  // finite q > 1
};

class EpsStepAdversary final : public Adversary {
 public:
  explicit EpsStepAdversary(EpsStepParams params);

  std::string name() const override { return "eps_step"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  double eps() const { return eps_; }
  double forced_floor() const;  // steps * (eps/2)^p

 private:
  EpsStepParams params_;
  SmoothClass cls_;
  double eps_;
  double y_ = 0.0;
  std::vector<Breakpoint> revealed_;
};

// Two rounds at quadratic loss: reveal 0 at the origin, then probe at
// the distance z* maximising z * g(z) and reveal whichever of
// +-sqrt(z*) is farther from the guess.  The interpolant's 2-action is
// exactly 1 and the weighted loss is at least z* g(z*) = sup z g(z).
struct TwoRoundParams {
  WeightFunction weight;
  double probe_override = 0.0;  // > 0 replaces the analytic maximiser
};

class TwoRoundWeightedAdversary final : public Adversary {
 public:
  explicit TwoRoundWeightedAdversary(TwoRoundParams params);

  std::string name() const override { return "two_round_weighted"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  double probe() const { return probe_; }
  double forced_floor() const;  // g(probe) * probe

 private:
  TwoRoundParams params_;
  SmoothClass cls_;
  double probe_;
  std::vector<Breakpoint> revealed_;
};

// Probes the coordinate directions of R^n at distance probe_scale and
// labels +-r, whichever is farther.  Consistent with the clipped linear
// map v = (labels / probe_scale); forces r per round, n * r^p in total.
struct BasisParams {
  int n = 3;
  double r = 1.0;
  double probe_scale = 1.0;
};

class BasisAdversary final : public Adversary {
 public:
  explicit BasisAdversary(BasisParams params);

  std::string name() const override { return "basis"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  int dimension() const override { return params_.n; }
  const SmoothClass* target_class() const override { return &cls_; }

 private:
  BasisParams params_;
  SmoothClass cls_;
  std::vector<double> labels_;  // label for direction i at labels_[i-1]
};

// --- Finite families ------------------------------------------------
//
// Three hand-built families whose gap between restricted-adversary and
// unscored-far-round games is extreme, plus the two-member reduction.

// Three functions agreeing at x in {2, 4}, split +-1 at x in {1, 5},
// with an eps-sized tiebreaker at x = 3.  Restricted play concedes
// about 1; free far jumps concede 1 + 2^-p.
std::vector<BreakpointFunction> make_triple_family(double eps);

// n = 2^k members indexed by i; block j carries (4j, 0), (4j+1, i*eps),
// (4j+2, 0), (4j+3, sign of bit j of i).  The sign blocks cost 1 each
// when reached fresh; the i*eps probes give the whole index away, which
// is exactly what restricted play is forced through.
std::vector<BreakpointFunction> make_bitcode_family(std::size_t n, double eps);

// n members, zero on all even integers up to 4n, with an i*eps marker
// at 4j-3 and sign -1 at every 4j-1 except +1 at 4i-1.
std::vector<BreakpointFunction> make_onehot_family(std::size_t n, double eps);

// Plays the triple family's far-jump script: reveal 0 at 2; at 1 reveal
// -1 when the guess already pays 1 + 2^-p against it, else +1; reveal 0
// at 4 (a free round beyond the unit radius); finish +-1 at 5.
class TripleFamilyAdversary final : public Adversary {
 public:
  TripleFamilyAdversary(double eps, double p);

  std::string name() const override { return "family:triple"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  double forced_floor() const;  // 1 + 2^-p

 private:
  double eps_;
  double p_;
  SmoothClass cls_;
  std::vector<bool> alive_;
  std::vector<std::pair<double, double>> revealed_;
};

// Bitcode family script: visit (4j+2, 4j+3) for each block j, jumping
// blocks at distance 3 (unscored beyond the unit radius), and reveal the
// worse sign at each 4j+3.  Forces log2(n) while restricted play pays
// about 1.
class BitcodeFamilyAdversary final : public Adversary {
 public:
  BitcodeFamilyAdversary(std::size_t n, double eps, double p);

  std::string name() const override { return "family:bitcode"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  double forced_floor() const;  // log2(n) at p = 1; k generally

 private:
  std::size_t n_;
  std::size_t k_;  // log2(n)
  double eps_;
  double p_;
  SmoothClass cls_;
  std::vector<bool> alive_;
  std::vector<std::pair<double, double>> revealed_;
};

// One-hot family script: at each 4j-1 the guess either strays from +1
// far enough to pay c = (n-1) / ((1 + (n-1)^(1/p)) / 2)^p outright
// (reveal +1, commit to member j) or hugs +1 and pays against -1.
class OneHotFamilyAdversary final : public Adversary {
 public:
  OneHotFamilyAdversary(std::size_t n, double eps, double p);

  std::string name() const override { return "family:onehot"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  double forced_floor() const { return c_; }
  double threshold() const { return threshold_; }

 private:
  std::size_t n_;
  double eps_;
  double p_;
  double c_;
  double threshold_;  // c^(1/p)
  SmoothClass cls_;
  bool committed_ = false;
  std::size_t committed_j_ = 1;  // member locked in by a far guess
  std::vector<std::pair<double, double>> revealed_;
};

// Two-member reduction: open at an agreement point, then probe the
// argmax of |f1 - f2| within unit reach of it, forcing (m/2)^p.
class PairFamilyAdversary final : public Adversary {
 public:
  PairFamilyAdversary(BreakpointFunction f1, BreakpointFunction f2);

  std::string name() const override { return "family:pair"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  const AgreementWitness& witness() const { return witness_; }

 private:
  SmoothClass cls_;
  AgreementWitness witness_;
  std::vector<std::pair<double, double>> revealed_;
};

// Generic consistent family opponent: labels are always a still-alive
// member's value, the one farthest from the guess.  Inputs follow an
// explicit script, or a seeded random walk (admissible when radius > 0,
// free-roaming when radius == 0).
class AdaptiveFamilyAdversary final : public Adversary {
 public:
  AdaptiveFamilyAdversary(std::vector<BreakpointFunction> family,
                          std::vector<double> script);
  AdaptiveFamilyAdversary(std::vector<BreakpointFunction> family,
                          std::size_t steps, double radius,
                          std::uint64_t seed);

  std::string name() const override { return "family:adaptive"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  std::size_t alive_count() const;

 private:
  SmoothClass cls_;
  std::vector<double> script_;
  std::size_t steps_ = 0;
  double radius_ = 0.0;
  bool random_ = false;
  std::mt19937_64 rng_;
  std::vector<double> past_;
  std::vector<bool> alive_;
  std::vector<std::pair<double, double>> revealed_;
};

// Unit-distance diagonal march in the plane revealing 0 or the tent
// amplitude at each stop, whichever is farther from the guess.  Every
// axis-parallel slice of the revealed field stays inside the q-action
// budget while the learner concedes amplitude/2 per round: slice
// budgets see nothing of the dimension-2 escape.
struct TentParams {
  double q = 2.0;
  double eta = 0.05;
  std::size_t steps = 1000;
};

class TentAdversary2D final : public Adversary {
 public:
  explicit TentAdversary2D(TentParams params);

  std::string name() const override { return "tent_2d"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  int dimension() const override { return 2; }
  const SmoothClass* target_class() const override { return &cls_; }

  const SeparableTentFunction& tent() const { return tent_; }
  double amplitude() const { return tent_.amplitude(); }

 private:
  TentParams params_;
  SmoothClass cls_;
  SeparableTentFunction tent_;
  std::vector<std::pair<Point, double>> revealed_;
};

// Labels drawn from a hidden random function with q-action exactly
// `budget`; inputs stay within unit reach of the past (optionally
// steered towards where interpolation of the history is most wrong).
struct RandomSmoothParams {
  double q = 2.0;
  double budget = 1.0;   // target q-action, in (0, 1]
  std::size_t steps = 40;
  double width = 5.0;    // breakpoint spread of the hidden function
  bool distinct_inputs = false;
  bool greedy = false;   // steer towards the largest interpolation gap
  std::uint64_t seed = 0;
};

class RandomSmoothAdversary final : public Adversary {
 public:
  explicit RandomSmoothAdversary(RandomSmoothParams params);

  std::string name() const override { return "random_smooth"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  Certificate certify() const override;
  const SmoothClass* target_class() const override { return &cls_; }

  const BreakpointFunction& target() const { return target_; }

 private:
  RandomSmoothParams params_;
  SmoothClass cls_;
  BreakpointFunction target_;
  std::mt19937_64 rng_;
  std::vector<double> past_;
  std::vector<Breakpoint> revealed_;
};

// Name-and-parameter factory used by the command line, e.g.
// "geometric_escape:c=2,h=1,steps=50".  Weighted constructions take the
// weight from the game config.
std::unique_ptr<Adversary> make_adversary(const std::string& spec,
                                          const GameConfig& config);

}  // namespace osl
