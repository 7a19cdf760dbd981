#include "osl/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |slope|^q with an exact fast path for the common q = 2 case so that
// rational test fixtures come out bit-exact.
double abs_pow(double v, double q) {
  const double a = std::abs(v);
  if (q == 2.0) return a * a;
  if (q == 1.0) return a;
  return std::pow(a, q);
}

}  // namespace

BreakpointFunction::BreakpointFunction(std::vector<Breakpoint> points)
    : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].x < points_[i].x)) {
      throw std::invalid_argument("BreakpointFunction: duplicate breakpoint x");
    }
  }
}

double BreakpointFunction::operator()(double x) const {
  if (points_.empty()) return 0.0;
  if (x <= points_.front().x) return points_.front().y;
  if (x >= points_.back().x) return points_.back().y;
  auto it = std::lower_bound(
      points_.begin(), points_.end(), x,
      [](const Breakpoint& p, double v) { return p.x < v; });
  if (it->x == x) return it->y;  // stored value, not the interpolation of it
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  return lo.y + (x - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
}

ActionValue q_action(const BreakpointFunction& f, double q) {
  if (!(q >= 1.0)) {
    throw std::invalid_argument("q_action: exponent must satisfy q >= 1");
  }
  ActionValue out{q, 0.0};
  const auto pts = f.points();
  if (pts.size() < 2) return out;
  if (q == kInf) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double slope =
          (pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x);
      out.value = std::max(out.value, std::abs(slope));
    }
    return out;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double len = pts[i].x - pts[i - 1].x;
    const double slope = (pts[i].y - pts[i - 1].y) / len;
    out.value += len * abs_pow(slope, q);
  }
  return out;
}

BreakpointFunction insert_point(const BreakpointFunction& f, double x,
                                double y) {
  std::vector<Breakpoint> pts(f.points().begin(), f.points().end());
  pts.push_back({x, y});
  return BreakpointFunction(std::move(pts));  // ctor rejects duplicates
}

BreakpointFunction scale(const BreakpointFunction& f, double radius,
                         double q) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("scale: radius must be positive");
  }
  if (!(q > 1.0) || q == kInf) {
    throw std::invalid_argument("scale: requires finite q > 1");
  }
  const double amp = std::pow(radius, -(q - 1.0) / q);
  std::vector<Breakpoint> pts;
  pts.reserve(f.size());
  for (const Breakpoint& p : f.points()) {
    pts.push_back({p.x / radius, amp * p.y});
  }
  return BreakpointFunction(std::move(pts));
}

NonNestingReport nonnesting_witnesses(double q, double r, int spike_count,
                                      double half_width) {
  if (!(1.0 <= q) || !(q < r) || r == kInf) {
    throw std::invalid_argument(
        "nonnesting_witnesses: requires 1 <= q < r < inf");
  }
  if (spike_count < 1 || !(half_width > 1.0)) {
    throw std::invalid_argument(
        "nonnesting_witnesses: spike_count >= 1 and half_width > 1 required");
  }
  NonNestingReport rep;
  rep.q = q;
  rep.r = r;
  rep.spike_count = spike_count;
  rep.half_width = half_width;
  const double t = half_width;

  // Unit slope everywhere: both integrals grow linearly in T.
  rep.rows[0] = {"identity", 2.0 * t, 2.0 * t};

  // Spikes of slope 2^n on intervals of length 2^-n(q+1).  Summed term
  // by term rather than in closed form so tests can pin 1 - 2^-N
  // independently.
  double sq = 0.0, sr = 0.0;
  for (int n = 1; n <= spike_count; ++n) {
    const double len = std::pow(2.0, -n * (q + 1.0));
    sq += len * std::pow(2.0, n * q);
    sr += len * std::pow(2.0, n * r);
  }
  rep.rows[1] = {"spike", sq, sr};

  // f'(x) = (1+x)^(-1/q) on [0, T]: the q-th power integrates (1+x)^-1.
  const double e = r / q;
  rep.rows[2] = {"tail", std::log1p(t),
                 (1.0 - std::pow(1.0 + t, 1.0 - e)) / (e - 1.0)};

  // f'(x) = x^(-1/r) on [1/T, 1]: the r-th power integrates x^-1.
  const double lo = 1.0 / t;
  const double eq = q / r;
  rep.rows[3] = {"cusp", (1.0 - std::pow(lo, 1.0 - eq)) / (1.0 - eq),
                 std::log(t)};
  return rep;
}

void to_json(nlohmann::json& j, const BreakpointFunction& f) {
  j = nlohmann::json::array();
  for (const Breakpoint& p : f.points()) {
    j.push_back({p.x, p.y});
  }
}

void from_json(const nlohmann::json& j, BreakpointFunction& f) {
  std::vector<Breakpoint> pts;
  pts.reserve(j.size());
  for (const auto& e : j) {
    pts.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  }
  f = BreakpointFunction(std::move(pts));
}

}  // namespace osl
