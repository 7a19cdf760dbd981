#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "osl/classes.hpp"
#include "support.hpp"

using namespace osl;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("classes") {

TEST_CASE("factories validate their parameters") {
  CHECK_THROWS_AS(SmoothClass::gq(1.0), std::invalid_argument);
  CHECK_THROWS_AS(SmoothClass::gq(kInf), std::invalid_argument);
  CHECK_THROWS_AS(SmoothClass::gqd(2.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SmoothClass::truncated_linear(0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SmoothClass::truncated_linear(2, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SmoothClass::finite({}), std::invalid_argument);

  CHECK(SmoothClass::gq(2.0).kind() == SmoothClass::Kind::kGq);
  CHECK(SmoothClass::ginf().kind() == SmoothClass::Kind::kGinf);
  CHECK(SmoothClass::gqd(2.0, 3).dimension() == 3);
  CHECK(SmoothClass::truncated_linear(4, 2.0).n() == 4);
  CHECK_FALSE(SmoothClass::gq(2.0).describe().empty());
}

TEST_CASE("membership check measures the action against the budget") {
  const BreakpointFunction tall({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
  auto cert = is_member(SmoothClass::gq(2.0), tall);
  CHECK_FALSE(cert.member);
  CHECK(cert.action == doctest::Approx(2.0));

  const BreakpointFunction shallow({{0.0, 0.0}, {2.0, 1.0}});
  CHECK(is_member(SmoothClass::gq(2.0), shallow).member);

  // A tent with action exactly 1 sits on the boundary and must pass.
  const double h = std::sqrt(0.5);
  const BreakpointFunction edge({{0.0, 0.0}, {1.0, h}, {2.0, 0.0}});
  cert = is_member(SmoothClass::gq(2.0), edge);
  CHECK(cert.member);
  CHECK(cert.action == doctest::Approx(1.0));

  CHECK(is_member(SmoothClass::ginf(), tall).member);
  const BreakpointFunction steep({{0.0, 0.0}, {1.0, 1.1}});
  CHECK_FALSE(is_member(SmoothClass::ginf(), steep).member);

  CHECK_THROWS_AS(is_member(SmoothClass::truncated_linear(2, 1.0), tall),
                  std::invalid_argument);
}

TEST_CASE("clipped linear evaluation") {
  CHECK(truncated_linear_evaluate({1.0, 2.0}, {3.0, -1.0}, 2.0) == 1.0);
  CHECK(truncated_linear_evaluate({1.0, 2.0}, {3.0, -1.0}, 0.5) == 0.0);
  CHECK(truncated_linear_evaluate({1.0}, {2.0}, 2.0) == 2.0);  // boundary
  CHECK(truncated_linear_evaluate({-1.0}, {3.0}, 2.0) == 0.0);
  CHECK_THROWS_AS(truncated_linear_evaluate({1.0}, {1.0, 2.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(truncated_linear_evaluate({1.0}, {1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("m-value of a spike against the flat function") {
  const BreakpointFunction flat({{0.0, 0.0}, {5.0, 0.0}});
  const BreakpointFunction spike({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
  const auto w = family_m_value(flat, spike);
  CHECK(w.has_agreement);
  CHECK(w.m == doctest::Approx(1.0));
  CHECK(w.arg_x == doctest::Approx(1.0));
  CHECK(std::abs(w.arg_x - w.anchor_x) <= 1.0 + 1e-9);
}

TEST_CASE("m-value without any agreement point") {
  const auto w = family_m_value(BreakpointFunction({{0.0, 1.0}}),
                                BreakpointFunction({{0.0, -1.0}}));
  CHECK_FALSE(w.has_agreement);
  CHECK(w.m == 0.0);
}

TEST_CASE("m-value clips a long ramp at unit reach") {
  // Difference grows with slope 5 from the last agreement at 0, so only
  // the first unit of the climb is reachable.
  const BreakpointFunction ramp({{0.0, 0.0}, {2.0, 10.0}});
  const BreakpointFunction zero({{0.0, 0.0}});
  const auto w = family_m_value(ramp, zero);
  CHECK(w.has_agreement);
  CHECK(w.m == doctest::Approx(5.0));
  CHECK(w.arg_x == doctest::Approx(1.0));
  CHECK(w.anchor_x == doctest::Approx(0.0));
}

TEST_CASE("m-value separates the adjacent dip members") {
  const double eps = 0.01;
  const BreakpointFunction g1(
      {{1.0, 1.0}, {2.0, 0.0}, {3.0, -eps}, {4.0, 0.0}, {5.0, 1.0}});
  const BreakpointFunction g2(
      {{1.0, 1.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}, {5.0, -1.0}});
  const auto w = family_m_value(g1, g2);
  CHECK(w.has_agreement);
  CHECK(w.m == doctest::Approx(2.0));
  CHECK(w.arg_x == doctest::Approx(5.0));
}

TEST_CASE("m-value matches the enumeration oracle on random pairs") {
  auto rng = testing::make_rng(21);
  for (int i = 0; i < 60; ++i) {
    auto f1 = testing::random_pwl(rng, 5);
    auto f2 = testing::random_pwl(rng, 5);
    // Pin a shared leftmost point so an agreement exists.
    std::vector<Breakpoint> pts(f2.points().begin(), f2.points().end());
    pts.insert(pts.begin(), {f1.front_x() - 1.0, f1(f1.front_x() - 1.0)});
    f2 = BreakpointFunction(std::move(pts));

    const auto w = family_m_value(f1, f2);
    const double oracle = testing::oracle_m_value(f1, f2);
    CHECK(w.has_agreement);
    CHECK(w.m == doctest::Approx(oracle).epsilon(1e-9));
    if (w.m > 0.0) {
      CHECK(std::abs(f1(w.arg_x) - f2(w.arg_x)) ==
            doctest::Approx(w.m).epsilon(1e-9));
      CHECK(std::abs(f1(w.anchor_x) - f2(w.anchor_x)) ==
            doctest::Approx(0.0).scale(1.0));
      CHECK(std::abs(w.arg_x - w.anchor_x) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("tent field geometry and amplitude") {
  CHECK_THROWS_AS(SeparableTentFunction(1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(SeparableTentFunction(kInf, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(SeparableTentFunction(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SeparableTentFunction(2.0, 0.1), std::invalid_argument);

  SeparableTentFunction tent(2.0, 0.05);
  CHECK(tent.alpha() == doctest::Approx(std::sqrt(1.0 - 0.05 * 0.05)));
  CHECK(tent.half_width_x() == doctest::Approx(tent.alpha() / 4.0));
  CHECK(tent.half_width_y() == doctest::Approx(0.0125));
  // b < L, so the y-budget binds: a = sqrt(b / 2).
  CHECK(tent.amplitude() == doctest::Approx(std::sqrt(0.00625)));
  CHECK(tent.rectangles_disjoint());
}

TEST_CASE("tent field slices stay within budget with equality in y") {
  SeparableTentFunction tent(2.0, 0.05);
  tent.push_round(1);
  tent.push_round(0);
  tent.push_round(1);
  CHECK(tent.rounds() == 3);
  CHECK(tent.sigma(1) == 1);
  CHECK(tent.sigma(2) == 0);

  const double a = tent.amplitude();
  const double ax = tent.alpha();
  const double ey = tent.eta();
  CHECK(tent.evaluate(ax, ey) == doctest::Approx(a));
  CHECK(tent.evaluate(2.0 * ax, 2.0 * ey) == 0.0);  // sigma = 0
  CHECK(tent.evaluate(3.0 * ax, 3.0 * ey) == doctest::Approx(a));
  CHECK(tent.evaluate(ax + tent.half_width_x(), ey) ==
        doctest::Approx(0.0).scale(1.0));
  CHECK(tent.evaluate(0.5, -2.0) == 0.0);

  // Vertical slice through an active centre: action exactly 1.
  CHECK(tent.slice_action(Axis::kY, ax) == doctest::Approx(1.0));
  // Horizontal slice through the same centre: strictly inside budget.
  CHECK(tent.slice_action(Axis::kX, ey) ==
        doctest::Approx(ey / ax).epsilon(1e-12));
  // Slice through the skipped rectangle: identically zero.
  CHECK(tent.slice_action(Axis::kY, 2.0 * ax) == 0.0);

  // Sweep every critical offset in both axes.
  for (const Axis axis : {Axis::kX, Axis::kY}) {
    for (double off : tent.critical_offsets(axis)) {
      CHECK(tent.slice_action(axis, off) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("smooth class json round trip") {
  for (const SmoothClass& cls :
       {SmoothClass::gq(3.0), SmoothClass::ginf(), SmoothClass::gqd(2.0, 4),
        SmoothClass::truncated_linear(3, 1.5),
        SmoothClass::finite({BreakpointFunction({{0.0, 1.0}, {1.0, 0.0}})})}) {
    nlohmann::json j;
    to_json(j, cls);
    SmoothClass back = SmoothClass::gq(2.0);
    from_json(j, back);
    CHECK(back.kind() == cls.kind());
    CHECK(back.dimension() == cls.dimension());
    CHECK(back.n() == cls.n());
    CHECK(back.members().size() == cls.members().size());
  }
}

}  // TEST_SUITE
