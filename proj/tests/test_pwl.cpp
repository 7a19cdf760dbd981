#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "osl/pwl.hpp"
#include "support.hpp"

using namespace osl;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

BreakpointFunction tent() {
  return BreakpointFunction({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
}
}  // namespace

TEST_SUITE("pwl") {

TEST_CASE("construction sorts and validates") {
  BreakpointFunction f({{2.0, 5.0}, {0.0, 1.0}});
  CHECK(f.front_x() == 0.0);
  CHECK(f.back_x() == 2.0);
  CHECK(f(1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(BreakpointFunction({{1.0, 0.0}, {1.0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("empty and single-point functions") {
  BreakpointFunction empty;
  CHECK(empty.empty());
  CHECK(empty(3.0) == 0.0);
  CHECK(q_action(empty, 2.0).value == 0.0);

  BreakpointFunction flat({{1.0, 7.0}});
  CHECK(flat(-100.0) == 7.0);
  CHECK(flat(100.0) == 7.0);
  CHECK(q_action(flat, 2.0).value == 0.0);
  CHECK(q_action(flat, kInf).value == 0.0);
}

TEST_CASE("interpolation with constant extension") {
  const auto f = tent();
  CHECK(f(-5.0) == 0.0);
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.0) == 1.0);
  CHECK(f(1.75) == doctest::Approx(0.25));
  CHECK(f(9.0) == 0.0);
}

TEST_CASE("equality is structural") {
  CHECK(tent() == tent());
  CHECK(tent() != BreakpointFunction({{0.0, 0.0}, {1.0, 1.0}}));
  CHECK(BreakpointFunction() == BreakpointFunction());
}

TEST_CASE("q-action on hand examples") {
  BreakpointFunction ramp({{0.0, 0.0}, {3.0, 6.0}});  // slope 2 for 3 units
  CHECK(q_action(ramp, 2.0).value == doctest::Approx(12.0));
  CHECK(q_action(ramp, 1.0).value == doctest::Approx(6.0));
  CHECK(q_action(ramp, kInf).value == doctest::Approx(2.0));
  CHECK(q_action(ramp, 1.5).value ==
        doctest::Approx(std::pow(2.0, 1.5) * 3.0));

  CHECK(q_action(tent(), 2.0).value == doctest::Approx(2.0));
  CHECK(q_action(tent(), 3.0).value == doctest::Approx(2.0));
  CHECK(q_action(tent(), kInf).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(q_action(tent(), 0.5), std::invalid_argument);
}

TEST_CASE("q-action agrees with quadrature on random functions") {
  auto rng = testing::make_rng(11);
  for (double q : {1.5, 2.0, 3.0}) {
    for (int i = 0; i < 30; ++i) {
      const auto f = testing::random_pwl(rng, 8);
      const double exact = q_action(f, q).value;
      const double approx = testing::quadrature_action(f, q);
      CHECK(exact == doctest::Approx(approx).epsilon(5e-3));
    }
  }
}

TEST_CASE("sup-slope action agrees with a direct segment scan") {
  auto rng = testing::make_rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto f = testing::random_pwl(rng, 6);
    double worst = 0.0;
    const auto pts = f.points();
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      worst = std::max(worst, std::abs((pts[j + 1].y - pts[j].y) /
                                       (pts[j + 1].x - pts[j].x)));
    }
    CHECK(q_action(f, kInf).value == doctest::Approx(worst).epsilon(1e-12));
  }
}

TEST_CASE("insert_point adds a node and rejects duplicates") {
  const auto f = tent();
  const auto g = insert_point(f, 0.5, 2.0);
  CHECK(g.size() == 4);
  CHECK(g(0.5) == 2.0);
  CHECK(f.size() == 3);  // input untouched
  CHECK_THROWS_AS(insert_point(f, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("interior insert grows the 2-action by e^2 (1/d1 + 1/d2)") {
  auto rng = testing::make_rng(13);
  std::uniform_real_distribution<double> ue(-1.5, 1.5);
  std::uniform_real_distribution<double> ut(0.05, 0.95);
  for (int i = 0; i < 40; ++i) {
    const auto f = testing::random_pwl(rng, 6);
    const auto pts = f.points();
    const double x0 = pts[2].x;
    const double x1 = pts[3].x;
    const double x = x0 + ut(rng) * (x1 - x0);
    const double e = ue(rng);
    const double d1 = x - x0;
    const double d2 = x1 - x;
    const double before = q_action(f, 2.0).value;
    const double after = q_action(insert_point(f, x, f(x) + e), 2.0).value;
    CHECK(after - before ==
          doctest::Approx(e * e * (1.0 / d1 + 1.0 / d2)).epsilon(1e-9));
    // The interpolated value is the exact minimiser: re-inserting it is
    // free.
    const double same = q_action(insert_point(f, x, f(x)), 2.0).value;
    CHECK(same == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("exterior insert grows the 2-action by exactly e^2 / d") {
  const auto f = tent();
  const double d = 3.0;
  const double e = 0.7;
  const auto g = insert_point(f, f.back_x() + d, f(f.back_x()) + e);
  CHECK(q_action(g, 2.0).value - q_action(f, 2.0).value ==
        doctest::Approx(e * e / d).epsilon(1e-12));
}

TEST_CASE("scale preserves the q-action exactly") {
  auto rng = testing::make_rng(14);
  for (double q : {2.0, 3.0}) {
    for (double radius : {0.5, 2.0, 4.0}) {
      const auto f = testing::random_pwl(rng, 7);
      const auto g = scale(f, radius, q);
      CHECK(q_action(g, q).value ==
            doctest::Approx(q_action(f, q).value).epsilon(1e-12));
      // Spot-check the value map x -> radius^-((q-1)/q) f(radius x).
      const double kappa = (q - 1.0) / q;
      for (double x : {-1.0, 0.3, 2.5}) {
        CHECK(g(x) == doctest::Approx(std::pow(radius, -kappa) *
                                      f(radius * x))
                          .epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(scale(tent(), 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(scale(tent(), 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("witness integrals separate the two exponents") {
  // q = 2, r = 3 throughout.  The q-side of the tail witness grows
  // without bound while its r-side stays below r/(r-q) = 2; the cusp
  // witness swaps the roles.
  const auto small = nonnesting_witnesses(2.0, 3.0, 40, 1e3);
  const auto mid = nonnesting_witnesses(2.0, 3.0, 40, 1e6);
  const auto big = nonnesting_witnesses(2.0, 3.0, 40, 1e9);

  CHECK(small.rows[0].q_integral == doctest::Approx(2e3));
  CHECK(mid.rows[0].q_integral == doctest::Approx(2e6));

  // Spikes: unit terms on the r side, geometric on the q side.
  CHECK(mid.rows[1].q_integral == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mid.rows[1].q_integral < 1.0);
  CHECK(mid.rows[1].r_integral == doctest::Approx(40.0));

  CHECK(mid.rows[2].q_integral > small.rows[2].q_integral + 6.0);
  CHECK(big.rows[2].q_integral > mid.rows[2].q_integral + 6.0);
  CHECK(big.rows[2].r_integral < 2.0);

  CHECK(big.rows[3].q_integral < 3.0);
  CHECK(mid.rows[3].r_integral > small.rows[3].r_integral + 6.0);
  CHECK(big.rows[3].r_integral > mid.rows[3].r_integral + 6.0);

  CHECK_THROWS_AS(nonnesting_witnesses(3.0, 2.0, 10, 1e3),
                  std::invalid_argument);
  CHECK_THROWS_AS(nonnesting_witnesses(2.0, 3.0, 0, 1e3),
                  std::invalid_argument);
  CHECK_THROWS_AS(nonnesting_witnesses(2.0, 3.0, 10, 0.5),
                  std::invalid_argument);
}

TEST_CASE("json round trip") {
  const auto f = tent();
  nlohmann::json j;
  to_json(j, f);
  CHECK(j.size() == 3);
  CHECK(j[1][0] == 1.0);
  BreakpointFunction g;
  from_json(j, g);
  CHECK(f == g);

  nlohmann::json empty = nlohmann::json::array();
  BreakpointFunction e;
  from_json(empty, e);
  CHECK(e.empty());
}

}  // TEST_SUITE
