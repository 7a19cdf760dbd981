#pragma once

// Named verification experiments over the game engine, grouped into
// suites, plus the command line entry point.  Every experiment pins its
// expected value and tolerance in code and emits one row per check, so
// `verify all` doubles as the acceptance gate.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "osl/engine.hpp"
#include "osl/learners.hpp"

namespace osl {

struct ResultRow {
  std::string suite;
  std::string name;    // experiment id within the suite
  std::string params;  // human-readable parameter summary
  std::string claim;   // the inequality or identity being checked
  double measured = 0.0;
  double expected = 0.0;
  char bound = '=';  // '<' measured <= expected, '>' measured >=, '=' equal
  double tolerance = 0.0;
  bool pass = false;
  int criterion = 0;  // acceptance criterion this row belongs to, 1..10
  double seconds = 0.0;
};

// Plays a recorded (input, label) sequence back verbatim; used for
// re-running one game under different scenarios or rescaled copies.
class ScriptedAdversary final : public Adversary {
 public:
  ScriptedAdversary(std::vector<Point> inputs, std::vector<double> labels,
                    const SmoothClass* cls = nullptr);

  std::string name() const override { return "scripted"; }
  std::optional<Point> next_input(std::size_t t) override;
  double reveal(std::size_t t, const Point& x, double y_hat) override;
  int dimension() const override;
  const SmoothClass* target_class() const override { return cls_; }

 private:
  std::vector<Point> inputs_;
  std::vector<double> labels_;
  const SmoothClass* cls_;
};

// Runs a one-dimensional learner on the first coordinate of the input,
// ignoring the rest.  The slice-bounded baseline in the plane games.
class FirstCoordLearner final : public Learner {
 public:
  explicit FirstCoordLearner(std::unique_ptr<Learner> base);

  std::string name() const override;
  double predict(const LearnerState& state, const Point& x) override;

 private:
  std::unique_ptr<Learner> base_;
  LearnerState shadow_;
  std::size_t consumed_ = 0;
};

// Predicts one constant forever, e.g. the midpoint of a known two-value
// label set.
class FixedValueLearner final : public Learner {
 public:
  explicit FixedValueLearner(double value) : value_(value) {}

  std::string name() const override { return "const"; }
  double predict(const LearnerState&, const Point&) override { return value_; }

 private:
  double value_;
};

const std::vector<std::string>& suite_names();

// Runs one suite (or "all") with up to `jobs` experiments in flight.
// Rows come back in registry order whatever the completion order, and
// the same seed always produces the same rows.
std::vector<ResultRow> run_suite(const std::string& suite, int jobs,
                                 std::uint64_t seed);

bool all_pass(const std::vector<ResultRow>& rows);

// Table output.  `with_meta` adds the generated-at header line and the
// wall-clock column; switch it off for byte-identical reruns.
std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_meta);
std::string rows_to_json(const std::vector<ResultRow>& rows, bool with_meta);

// Plot-data tables: a named experiment evaluated over a parameter grid.
struct TableResult {
  std::string name;
  std::string comment;  // column documentation, emitted as a CSV header
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

const std::vector<std::string>& table_names();
TableResult make_table(const std::string& name, const std::vector<double>& grid,
                       std::uint64_t seed);
std::string table_to_csv(const TableResult& table, bool with_meta);

// Full command line: subcommands simulate / verify / table.  Returns
// the process exit status (0 pass, 1 expectation failure, 2 usage).
int cli_run(int argc, const char* const* argv);

}  // namespace osl
