#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "osl/experiments.hpp"
#include "osl/learners.hpp"

using namespace osl;

namespace {

int cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("osl");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_run(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path tmp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("suite registry") {
  CHECK(suite_names() ==
        std::vector<std::string>{"sharp_constants", "divergence",
                                 "scaling_law", "families", "multivariable",
                                 "weights"});
  CHECK_THROWS_AS(run_suite("nope", 1, 1), std::invalid_argument);
}

TEST_CASE("a suite runs, passes, and stamps its rows") {
  const auto rows = run_suite("weights", 2, 1);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(r.suite == "weights");
    CHECK_FALSE(r.name.empty());
    CHECK_FALSE(r.claim.empty());
    CHECK(r.pass);
  }
}

TEST_CASE("results are deterministic and independent of job count") {
  const auto a = run_suite("weights", 1, 7);
  const auto b = run_suite("weights", 4, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].measured == b[i].measured);  // bit for bit
    CHECK(a[i].pass == b[i].pass);
  }
}

TEST_CASE("pass logic per bound kind") {
  std::vector<ResultRow> rows = run_suite("weights", 1, 1);
  rows[0].pass = false;
  CHECK_FALSE(all_pass(rows));
  rows[0].pass = true;
  CHECK(all_pass(rows));
}

TEST_CASE("csv and json writers honour the meta switch") {
  const auto rows = run_suite("weights", 2, 1);
  const std::string csv = rows_to_csv(rows, false);
  CHECK(csv.rfind("suite,", 0) == 0);  // no generated-at header
  CHECK(csv.find("seconds") == std::string::npos);
  CHECK(line_count(csv) == rows.size() + 1);

  const std::string csv_meta = rows_to_csv(rows, true);
  CHECK(csv_meta.rfind("# generated ", 0) == 0);
  CHECK(csv_meta.find("seconds") != std::string::npos);

  const auto j = nlohmann::json::parse(rows_to_json(rows, false));
  CHECK_FALSE(j.contains("generated"));
  REQUIRE(j.at("rows").size() == rows.size());
  CHECK(j.at("rows")[0].at("pass").get<bool>());
  const auto jm = nlohmann::json::parse(rows_to_json(rows, true));
  CHECK(jm.contains("generated"));
}

TEST_CASE("tables have the advertised shape") {
  const auto t = make_table("ratio_vs_n", {2.0, 4.0}, 1);
  CHECK(t.name == "ratio_vs_n");
  REQUIRE(t.rows.size() == 2);
  REQUIRE(t.columns.size() == t.rows[0].size());
  // ratio_lower tracks log2(n) from below.
  CHECK(t.rows[1][4] >= 0.95 * 2.0);

  const auto empty = make_table("ratio_vs_n", {}, 1);
  CHECK(empty.rows.empty());
  const std::string csv = table_to_csv(empty, false);
  CHECK(line_count(csv) == 2);  // comment + column header only

  CHECK_THROWS_AS(make_table("nope", {1.0}, 1), std::invalid_argument);
}

TEST_CASE("scripted adversary and the fixed-value learner") {
  CHECK_THROWS_AS(ScriptedAdversary({{0.0}}, {}), std::invalid_argument);
  ScriptedAdversary adv({{0.0}, {1.0}}, {0.0, 2.0});
  CHECK(adv.dimension() == 1);

  FixedValueLearner c(0.75);
  LearnerState s;
  CHECK(c.predict(s, {123.0}) == 0.75);

  // First-coordinate wrapper hands 1-d views to its base learner.
  FirstCoordLearner fc(make_learner("linint"));
  LearnerState s2;
  s2.history.push_back({Point{0.0, 9.0}, 0.0});
  s2.history.push_back({Point{2.0, -3.0}, 4.0});
  CHECK(fc.predict(s2, {1.0, 100.0}) == doctest::Approx(2.0));
}

TEST_CASE("cli simulate writes a transcript") {
  const auto out = tmp_file("osl_test_sim.jsonl");
  std::filesystem::remove(out);
  CHECK(cli({"simulate", "--adversary", "eps_step:N=10", "--horizon", "11",
             "--out", out.string(), "--no-timestamp"}) == 0);
  const std::string text = slurp(out);
  CHECK(line_count(text) == 11);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const nlohmann::json round = nlohmann::json::parse(line);
    CHECK(round.contains("t"));
    CHECK(round.contains("loss"));
  }
  std::filesystem::remove(out);
}

TEST_CASE("cli config file fills gaps but flags win") {
  const auto cfgp = tmp_file("osl_test_cfg.json");
  {
    std::ofstream f(cfgp);
    f << R"({"horizon": 5, "adversary": "eps_step:N=50"})";
  }
  const auto out = tmp_file("osl_test_cfg_out.jsonl");

  CHECK(cli({"simulate", "--config", cfgp.string(), "--out", out.string()}) ==
        0);
  CHECK(line_count(slurp(out)) == 5);

  CHECK(cli({"simulate", "--config", cfgp.string(), "--horizon", "9", "--out",
             out.string()}) == 0);
  CHECK(line_count(slurp(out)) == 9);

  // Unknown keys are rejected rather than ignored.
  {
    std::ofstream f(cfgp);
    f << R"({"horzion": 5})";
  }
  CHECK(cli({"simulate", "--config", cfgp.string()}) == 2);

  std::filesystem::remove(cfgp);
  std::filesystem::remove(out);
}

TEST_CASE("cli resolves relative outputs against OSL_OUT_DIR") {
  const auto dir = std::filesystem::temp_directory_path() / "osl_test_dir";
  std::filesystem::create_directories(dir);
  setenv("OSL_OUT_DIR", dir.c_str(), 1);
  CHECK(cli({"simulate", "--adversary", "eps_step:N=5", "--horizon", "6",
             "--out", "rel.jsonl"}) == 0);
  unsetenv("OSL_OUT_DIR");
  CHECK(std::filesystem::exists(dir / "rel.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli verify emits rows and reports overall status") {
  const auto out = tmp_file("osl_test_verify.json");
  CHECK(cli({"verify", "weights", "--jobs", "2", "--format", "json",
             "--no-timestamp", "--out", out.string()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK_FALSE(j.contains("generated"));
  REQUIRE(!j.at("rows").empty());
  for (const auto& r : j.at("rows")) CHECK(r.at("pass").get<bool>());
  std::filesystem::remove(out);

  CHECK(cli({"verify", "bogus"}) == 2);
}

TEST_CASE("cli table emits plot data") {
  const auto out = tmp_file("osl_test_table.csv");
  CHECK(cli({"table", "ratio_vs_n", "--grid", "2,4", "--no-timestamp",
             "--out", out.string()}) == 0);
  CHECK(line_count(slurp(out)) == 4);  // comment, header, two rows

  CHECK(cli({"table", "ratio_vs_n", "--grid", "", "--no-timestamp", "--out",
             out.string()}) == 0);
  CHECK(line_count(slurp(out)) == 2);  // header only
  std::filesystem::remove(out);

  CHECK(cli({"table", "nope"}) == 2);
}

TEST_CASE("cli rejects bad usage with exit code 2") {
  CHECK(cli({}) == 2);                       // missing subcommand
  CHECK(cli({"frobnicate"}) == 2);           // unknown subcommand
  CHECK(cli({"simulate", "--adversary", "wat"}) == 2);
  CHECK(cli({"simulate", "--adversary", "tent_2d:steps=5", "--dim", "1"}) ==
        2);
  CHECK(cli({"simulate", "--format", "yaml"}) == 2);
}

TEST_CASE("cli surfaces protocol violations as expectation failures") {
  CHECK(cli({"simulate", "--adversary", "geometric_escape:steps=5",
             "--scenario", "s1", "--horizon", "6", "--out",
             tmp_file("osl_test_viol.jsonl").string()}) == 1);
  std::filesystem::remove(tmp_file("osl_test_viol.jsonl"));
}

}  // TEST_SUITE
