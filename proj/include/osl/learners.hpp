#pragma once

// Built-in prediction strategies.  All of them are pure functions of
// the game history handed over in LearnerState; the classes below only
// cache sorted/filtered views of that history so long games stay cheap.

#include <memory>
#include <string>
#include <vector>

#include "osl/engine.hpp"

namespace osl {

// Always predicts zero.  Works in any dimension.
class ZeroLearner final : public Learner {
 public:
  std::string name() const override { return "zero"; }
  double predict(const LearnerState& state, const Point& x) override;
};

// Predicts the piecewise linear interpolant of everything revealed so
// far (constant beyond the extremes, zero with empty history).
class LinintLearner final : public Learner {
 public:
  std::string name() const override { return "linint"; }
  double predict(const LearnerState& state, const Point& x) override;

 private:
  void sync(const LearnerState& state);
  std::vector<std::pair<double, double>> sorted_;
  std::size_t consumed_ = 0;
};

// Localised interpolation: only revealed points within distance 1 of
// the query matter.
//   no known point in [x-1, x+1]      -> 0
//   only points on one side           -> value of the nearest one
//   points on both sides              -> interpolate between the nearest
// An exact revisit returns the revealed value.  Unlike plain
// interpolation this cannot be dragged by faraway labels, which is what
// keeps its error per round at most 1 against unit-budget targets.
class LinintPrimeLearner final : public Learner {
 public:
  std::string name() const override { return "linint_prime"; }
  double predict(const LearnerState& state, const Point& x) override;

 private:
  void sync(const LearnerState& state);
  std::vector<std::pair<double, double>> sorted_;
  std::size_t consumed_ = 0;
};

// Midpoint of the smallest and largest value among the family members
// still consistent with the history (finite families only; the family
// comes from LearnerState::class_info).  Each erring round eliminates
// at least one member, so at most |F| - 1 rounds have nonzero error.
class FeasibleMidpointLearner final : public Learner {
 public:
  std::string name() const override { return "feasible_midpoint"; }
  double predict(const LearnerState& state, const Point& x) override;

  static constexpr double kConsistencyTolerance = 1e-9;

 private:
  void sync(const LearnerState& state);
  std::vector<bool> alive_;
  std::size_t consumed_ = 0;
};

// Clipped-linear strategy: predicts 0 until the query enters the span
// of past inputs with nonzero labels, then the implied combination of
// those labels, clipped to 0 outside [-r, r].  r comes from
// LearnerState::class_info.
class SpanLearner final : public Learner {
 public:
  std::string name() const override { return "span"; }
  double predict(const LearnerState& state, const Point& x) override;

  static constexpr double kResidualTolerance = 1e-9;

 private:
  void sync(const LearnerState& state);
  bool solve_in_span(const Point& x, std::vector<double>* coeffs,
                     double* residual) const;
  // Linearly independent inputs with nonzero labels, and their labels.
  std::vector<Point> basis_;
  std::vector<double> labels_;
  std::size_t consumed_ = 0;
};

// Radius coupling: plays `base` on the unit-radius shadow game
// z = x / radius, labels shrunk by radius^-((q-1)/q), and scales the
// shadow prediction back up.  Turns any unit-radius strategy into a
// radius-R strategy with loss multiplied by exactly radius^((q-1)p/q).
class ScaledLearner final : public Learner {
 public:
  ScaledLearner(std::unique_ptr<Learner> base, double radius, double q);
  std::string name() const override;
  double predict(const LearnerState& state, const Point& x) override;

 private:
  std::unique_ptr<Learner> base_;
  double radius_;
  double amp_;  // radius^((q-1)/q)
  LearnerState shadow_;
  std::size_t consumed_ = 0;
};

// Factory over the registered names: zero, linint, linint_prime,
// feasible_midpoint, span.  Throws std::invalid_argument on an unknown
// name.
std::unique_ptr<Learner> make_learner(const std::string& name);
const std::vector<std::string>& learner_names();

}  // namespace osl
