#pragma once

// Round-based prediction game.  Each round t the adversary picks an
// input x_t, the learner commits a guess, the adversary reveals the
// label, and the engine scores |guess - label|^p.  Round 0 is never
// scored.  Locality enters through delta_t, the distance from x_t to
// its nearest predecessor:
//
//   base         every round t >= 1 counts with weight 1
//   s1(R)        adversary must keep delta_t <= R; a violation aborts
//   s2(R)        rounds with delta_t > R are recorded but unscored
//   s3(weight)   every round counts, scaled by weight(delta_t); inputs
//                must be pairwise distinct
//
// Transcripts capture everything needed to re-score a game afterwards,
// e.g. under a different weight.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osl/classes.hpp"
#include "osl/weights.hpp"

namespace osl {

using Point = std::vector<double>;

double euclidean(const Point& a, const Point& b);

struct Scenario {
  enum class Kind { kBase, kS1, kS2, kS3 };

  Kind kind = Kind::kBase;
  double radius = 1.0;
  WeightFunction weight;  // meaningful for kS3 only

  static Scenario base();
  static Scenario s1(double radius = 1.0);
  static Scenario s2(double radius = 1.0);
  static Scenario s3(WeightFunction weight);
  std::string name() const;
};

struct GameConfig {
  double p = 2.0;   // loss exponent, > 0
  double q = 2.0;   // smoothness exponent, > 1 (may be +infinity)
  Scenario scenario;
  std::size_t horizon = 1000;  // max rounds including round 0
  int dimension = 1;
  std::uint64_t seed = 0;

  void validate() const;
  Scenario::Kind kind() const;
  std::string summary() const;
  std::uint64_t hash() const;
};

struct Round {
  std::size_t t = 0;
  Point x;
  double y_hat = 0.0;
  double y_true = 0.0;
  double delta = 0.0;  // NaN at t = 0
  bool counted = false;
  double weight = 1.0;
  double loss_term = 0.0;
};

struct Transcript {
  GameConfig config;
  std::vector<Round> rounds;
  double cumulative_loss = 0.0;

  // One JSON object per line, one line per round.
  void write_jsonl(std::ostream& os) const;
  static std::string csv_summary_header();
  std::string csv_summary() const;
};

struct LearnerState {
  std::vector<std::pair<Point, double>> history;  // one pair per completed round
  const SmoothClass* class_info = nullptr;
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual double predict(const LearnerState& state, const Point& x) = 0;
};

struct Certificate {
  bool ok = true;
  double value = 0.0;
  std::string detail;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  // Input for round t, or nullopt to end the game early.
  virtual std::optional<Point> next_input(std::size_t t) = 0;
  // Label for round t, chosen after seeing the learner's guess.
  virtual double reveal(std::size_t t, const Point& x, double y_hat) = 0;
  // Post-hoc consistency check: the labels revealed so far must trace a
  // function of the advertised class.
  virtual Certificate certify() const { return {}; }
  // Escape constructions stride further than any radius and only make
  // sense unweighted or under a decaying weight.
  virtual bool s1_admissible() const { return true; }
  virtual int dimension() const { return 1; }
  virtual const SmoothClass* target_class() const { return nullptr; }
};

class ProtocolViolationError : public std::runtime_error {
 public:
  ProtocolViolationError(std::size_t t, double delta, double radius);
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

class DuplicateInputError : public std::runtime_error {
 public:
  explicit DuplicateInputError(std::size_t t);
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

Transcript run_game(const GameConfig& config, Learner& learner,
                    Adversary& adversary);

// Re-scores a transcript as an s3 game under the given weight (all
// rounds t >= 1, weight h(delta_t)).  Requires distinct inputs when the
// weight is singular at zero.
double weighted_loss(const Transcript& transcript, const WeightFunction& h);

// Checks loss_h <= C_{g,h} * loss_g on one transcript.  When the ratio
// constant is infinite the inequality is vacuous and reported as such.
struct RatioBoundReport {
  double c_gh = 0.0;
  double loss_g = 0.0;
  double loss_h = 0.0;
  bool vacuous = false;
  bool holds = false;
};

RatioBoundReport ratio_bound_check(const Transcript& transcript,
                                   const WeightFunction& g,
                                   const WeightFunction& h);

// True when the sequence never strides more than radius from its past.
bool is_admissible(const std::vector<Point>& xs, double radius,
                   std::size_t* first_bad = nullptr);

// Growing the cutoff radius can only add scored rounds: the counted set
// is nested and the s2 loss is monotone for any fixed error sequence.
struct MonotonicityReport {
  std::vector<std::size_t> counted_lo;
  std::vector<std::size_t> counted_hi;
  bool nested = false;
  double loss_lo = 0.0;
  double loss_hi = 0.0;
  bool holds = false;
};

MonotonicityReport scenario_monotonicity_check(
    const std::vector<Point>& xs, const std::vector<double>& abs_errors,
    double radius_lo, double radius_hi, double p);

// Fits the interpolant of the revealed labels (dimension 1 only) and
// runs the class budget check on it.
MembershipCertificate validate_transcript_against_class(
    const Transcript& transcript, const SmoothClass& cls);

}  // namespace osl
