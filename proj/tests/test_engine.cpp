#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "osl/engine.hpp"
#include "osl/experiments.hpp"
#include "osl/learners.hpp"
#include "support.hpp"

using namespace osl;

namespace {

// Records what the engine hands to the learner each round.
class ProbeLearner final : public Learner {
 public:
  std::string name() const override { return "probe"; }
  double predict(const LearnerState& state, const Point&) override {
    history_sizes.push_back(state.history.size());
    class_info = state.class_info;
    return 0.0;
  }
  std::vector<std::size_t> history_sizes;
  const SmoothClass* class_info = nullptr;
};

ScriptedAdversary line_script(std::vector<double> xs,
                              std::vector<double> ys) {
  std::vector<Point> inputs;
  for (double x : xs) inputs.push_back({x});
  return ScriptedAdversary(std::move(inputs), std::move(ys));
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("euclidean distance") {
  CHECK(euclidean({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(euclidean({1.0}, {1.0}) == 0.0);
  CHECK_THROWS_AS(euclidean({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("config validation") {
  GameConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  GameConfig bad = cfg;
  bad.p = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.q = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.horizon = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.dimension = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.scenario = Scenario::s1(0.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(cfg.hash() == cfg.hash());
  GameConfig other = cfg;
  other.horizon += 1;
  CHECK(cfg.hash() != other.hash());
}

TEST_CASE("round zero is free, later rounds are scored") {
  auto adv = line_script({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, -2.0, 3.0});
  ZeroLearner zero;
  GameConfig cfg;
  cfg.p = 2.0;
  cfg.horizon = 10;
  const Transcript t = run_game(cfg, zero, adv);
  REQUIRE(t.rounds.size() == 4);
  CHECK_FALSE(t.rounds[0].counted);
  CHECK(std::isnan(t.rounds[0].delta));
  CHECK(t.rounds[0].loss_term == 0.0);
  CHECK(t.rounds[1].delta == doctest::Approx(1.0));
  CHECK(t.rounds[1].counted);
  CHECK(t.cumulative_loss == doctest::Approx(1.0 + 4.0 + 9.0));
}

TEST_CASE("horizon truncates and an exhausted adversary stops the game") {
  auto adv = line_script({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 1.0});
  ZeroLearner zero;
  GameConfig cfg;
  cfg.horizon = 2;
  CHECK(run_game(cfg, zero, adv).rounds.size() == 2);

  auto short_adv = line_script({0.0, 1.0}, {0.0, 1.0});
  cfg.horizon = 100;
  CHECK(run_game(cfg, zero, short_adv).rounds.size() == 2);
}

TEST_CASE("learner sees exactly the completed history") {
  auto adv = line_script({0.0, 1.0, 2.0}, {5.0, 6.0, 7.0});
  const SmoothClass cls = SmoothClass::gq(2.0);
  std::vector<Point> inputs = {{0.0}, {1.0}, {2.0}};
  ScriptedAdversary with_class(inputs, {5.0, 6.0, 7.0}, &cls);
  ProbeLearner probe;
  GameConfig cfg;
  run_game(cfg, probe, with_class);
  CHECK(probe.history_sizes == std::vector<std::size_t>{0, 1, 2});
  CHECK(probe.class_info == &cls);
}

TEST_CASE("restricted scenario aborts on a far input") {
  GameConfig cfg;
  cfg.scenario = Scenario::s1(1.0);
  ZeroLearner zero;

  auto bad = line_script({0.0, 5.0}, {0.0, 0.0});
  CHECK_THROWS_AS(run_game(cfg, zero, bad), ProtocolViolationError);
  auto bad2 = line_script({0.0, 5.0}, {0.0, 0.0});
  try {
    run_game(cfg, zero, bad2);
  } catch (const ProtocolViolationError& e) {
    CHECK(e.round() == 1);
  }

  // The cutoff has a hair of slack so boundary-riding walks pass.
  auto edge = line_script({0.0, 1.0 + 1e-10}, {0.0, 0.0});
  CHECK_NOTHROW(run_game(cfg, zero, edge));
  auto over = line_script({0.0, 1.1}, {0.0, 0.0});
  CHECK_THROWS_AS(run_game(cfg, zero, over), ProtocolViolationError);
}

TEST_CASE("cutoff scenario drops far rounds from the score") {
  auto adv = line_script({0.0, 1.0, 5.0, 5.5}, {0.0, 1.0, 1.0, 1.0});
  ZeroLearner zero;
  GameConfig cfg;
  cfg.p = 1.0;
  cfg.scenario = Scenario::s2(1.0);
  const Transcript t = run_game(cfg, zero, adv);
  CHECK(t.rounds[1].counted);
  CHECK_FALSE(t.rounds[2].counted);  // delta = 4
  CHECK(t.rounds[3].counted);        // delta = 0.5
  CHECK(t.rounds[2].loss_term == 0.0);
  CHECK(t.cumulative_loss == doctest::Approx(2.0));

  // Re-scoring with the constant weight restores the dropped round.
  CHECK(weighted_loss(t, WeightFunction::constant_one()) ==
        doctest::Approx(3.0));
}

TEST_CASE("weighted scenario scales by the gap and rejects duplicates") {
  auto adv = line_script({0.0, 2.0, 3.0}, {0.0, 4.0, 6.0});
  ZeroLearner zero;
  GameConfig cfg;
  cfg.p = 1.0;
  cfg.scenario = Scenario::s3(WeightFunction::identity());
  const Transcript t = run_game(cfg, zero, adv);
  CHECK(t.rounds[1].weight == doctest::Approx(0.5));
  CHECK(t.rounds[2].weight == doctest::Approx(1.0));
  CHECK(t.cumulative_loss == doctest::Approx(0.5 * 4.0 + 1.0 * 6.0));

  auto dup = line_script({0.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
  CHECK_THROWS_AS(run_game(cfg, zero, dup), DuplicateInputError);
  auto dup2 = line_script({0.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
  try {
    run_game(cfg, zero, dup2);
  } catch (const DuplicateInputError& e) {
    CHECK(e.round() == 2);
  }
}

TEST_CASE("adversary dimension must match the config") {
  ScriptedAdversary adv({{0.0, 0.0}}, {0.0});
  ZeroLearner zero;
  GameConfig cfg;  // dimension 1
  CHECK_THROWS_AS(run_game(cfg, zero, adv), std::invalid_argument);
}

TEST_CASE("ratio bound holds and degenerates gracefully") {
  auto adv = line_script({0.0, 1.0, 2.5}, {0.0, 1.0, 2.0});
  ZeroLearner zero;
  GameConfig cfg;
  cfg.p = 2.0;
  const Transcript t = run_game(cfg, zero, adv);

  const auto rep = ratio_bound_check(t, WeightFunction::constant_one(),
                                     WeightFunction::exponential(1.0));
  CHECK(rep.c_gh == doctest::Approx(1.0));
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.holds);
  CHECK(rep.loss_h < rep.loss_g);

  // No finite constant compares the exponential back to the identity.
  const auto vac = ratio_bound_check(t, WeightFunction::exponential(1.0),
                                     WeightFunction::identity());
  CHECK(vac.vacuous);
  CHECK(vac.holds);
}

TEST_CASE("admissibility scan finds the first stride over the radius") {
  std::vector<Point> xs = {{0.0}, {0.5}, {1.4}};
  CHECK(is_admissible(xs, 1.0));
  xs.push_back({3.0});  // nearest predecessor is 1.4, gap 1.6
  std::size_t bad = 0;
  CHECK_FALSE(is_admissible(xs, 1.0, &bad));
  CHECK(bad == 3);
  CHECK(is_admissible(xs, 2.0));
}

TEST_CASE("growing the radius only adds scored rounds") {
  const std::vector<Point> xs = {{0.0}, {1.0}, {3.5}, {3.7}, {10.0}};
  const std::vector<double> errs = {1.0, 2.0, 3.0, 4.0};
  const auto rep = scenario_monotonicity_check(xs, errs, 1.0, 3.0, 2.0);
  CHECK(rep.nested);
  CHECK(rep.holds);
  // Gaps: 1, 2.5, 0.2, 6.3; errors 1..4 with p = 2.
  CHECK(rep.counted_lo == std::vector<std::size_t>{1, 3});
  CHECK(rep.counted_hi == std::vector<std::size_t>{1, 2, 3});
  CHECK(rep.loss_lo == doctest::Approx(1.0 + 9.0));
  CHECK(rep.loss_hi == doctest::Approx(1.0 + 4.0 + 9.0));
  CHECK_THROWS_AS(scenario_monotonicity_check(xs, errs, 3.0, 1.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(scenario_monotonicity_check(xs, {1.0}, 1.0, 3.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("transcript validation against a class budget") {
  auto rng = testing::make_rng(31);
  const auto member =
      testing::with_action(testing::random_pwl(rng, 6), 2.0, 1.0);
  std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(member(x));
  auto adv = line_script(xs, ys);
  ZeroLearner zero;
  GameConfig cfg;
  const Transcript good = run_game(cfg, zero, adv);
  CHECK(validate_transcript_against_class(good, SmoothClass::gq(2.0)).member);

  auto cheat = line_script({0.0, 0.5, 1.0}, {0.0, 3.0, 0.0});
  const Transcript bad = run_game(cfg, zero, cheat);
  CHECK_FALSE(
      validate_transcript_against_class(bad, SmoothClass::gq(2.0)).member);
}

TEST_CASE("jsonl transcript parses line by line") {
  auto adv = line_script({0.0, 1.0}, {0.0, 2.0});
  ZeroLearner zero;
  GameConfig cfg;
  const Transcript t = run_game(cfg, zero, adv);
  std::ostringstream os;
  t.write_jsonl(os);
  std::istringstream is(os.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("t"));
    CHECK(j.contains("y_hat"));
    CHECK(j.contains("loss"));
    ++lines;
  }
  CHECK(lines == t.rounds.size());
  CHECK(t.rounds[0].t == 0);

  const std::string header = Transcript::csv_summary_header();
  const std::string summary = t.csv_summary();
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(summary.begin(), summary.end(), ','));
}

}  // TEST_SUITE
