#include "osl/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace osl {

namespace {

constexpr double kLabelMatchTol = 1e-9;

double loss_pow(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

// Interpolated lookup in a sorted (x, y) list; mirrors the breakpoint
// function semantics without constructing one per round.
double pwl_eval(const std::vector<std::pair<double, double>>& pts, double x) {
  if (pts.empty()) return 0.0;
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  auto it = std::lower_bound(
      pts.begin(), pts.end(), x,
      [](const std::pair<double, double>& p, double v) { return p.first < v; });
  if (it->first == x) return it->second;
  const auto& [hx, hy] = *it;
  const auto& [lx, ly] = *(it - 1);
  return ly + (x - lx) * (hy - ly) / (hx - lx);
}

void sorted_insert(std::vector<std::pair<double, double>>& pts, double x,
                   double y) {
  auto it = std::lower_bound(
      pts.begin(), pts.end(), x,
      [](const std::pair<double, double>& p, double v) { return p.first < v; });
  if (it != pts.end() && it->first == x) {
    it->second = y;
  } else {
    pts.insert(it, {x, y});
  }
}

std::vector<double> distinct_alive_values(
    const std::vector<BreakpointFunction>& members,
    const std::vector<bool>& alive, double x) {
  std::vector<double> vals;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!alive[i]) continue;
    const double v = members[i](x);
    bool seen = false;
    for (double w : vals) {
      if (w == v) {
        seen = true;
        break;
      }
    }
    if (!seen) vals.push_back(v);
  }
  return vals;
}

void filter_alive(const std::vector<BreakpointFunction>& members,
                  std::vector<bool>& alive, double x, double y) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (alive[i] && std::abs(members[i](x) - y) > kLabelMatchTol) {
      alive[i] = false;
    }
  }
}

Certificate certify_family(const SmoothClass& cls,
                           const std::vector<std::pair<double, double>>& rev) {
  Certificate c;
  std::size_t consistent = 0;
  for (const auto& f : cls.members()) {
    bool ok = true;
    for (const auto& [x, y] : rev) {
      if (std::abs(f(x) - y) > kLabelMatchTol) {
        ok = false;
        break;
      }
    }
    if (ok) ++consistent;
  }
  c.value = static_cast<double>(consistent);
  c.ok = consistent > 0;
  c.detail = std::to_string(consistent) + " consistent member(s) of " +
             std::to_string(cls.members().size());
  return c;
}

}  // namespace

double pick_farther(const std::vector<double>& candidates, double y_hat) {
  if (candidates.empty()) {
    throw std::invalid_argument("pick_farther: no candidates");
  }
  double best = candidates.front();
  for (double c : candidates) {
    const double dc = std::abs(c - y_hat);
    const double db = std::abs(best - y_hat);
    if (dc > db || (dc == db && c > best)) best = c;
  }
  return best;
}

// --- geometric escape -------------------------------------------------

GeometricEscapeAdversary::GeometricEscapeAdversary(
    GeometricEscapeParams params)
    : params_(params), cls_(SmoothClass::gq(params.q)) {
  if (!(params_.c > 1.0)) {
    throw std::invalid_argument("geometric_escape: c > 1 required");
  }
  if (!(params_.q > 1.0) || std::isinf(params_.q)) {
    throw std::invalid_argument("geometric_escape: finite q > 1 required");
  }
  if (params_.steps < 1) {
    throw std::invalid_argument("geometric_escape: steps >= 1 required");
  }
  if (params_.h == 0.0) {
    params_.h = max_step_height(params_.c, params_.q);
  }
  if (!(params_.h > 0.0)) {
    throw std::invalid_argument("geometric_escape: h > 0 required");
  }
}

double GeometricEscapeAdversary::max_step_height(double c, double q) {
  // Total action h^q * sum_i c^{i(1-q)} = h^q / (c^{q-1} - 1) <= 1.
  return std::pow(std::pow(c, q - 1.0) - 1.0, 1.0 / q);
}

double GeometricEscapeAdversary::step_distance(std::size_t t) const {
  return std::pow(params_.c, static_cast<double>(t));
}

std::optional<Point> GeometricEscapeAdversary::next_input(std::size_t t) {
  if (t > params_.steps) return std::nullopt;
  if (t > 0) x_ += step_distance(t);
  return Point{x_};
}

double GeometricEscapeAdversary::reveal(std::size_t t, const Point& x,
                                        double y_hat) {
  if (t > 0) {
    y_ = pick_farther({y_, y_ + params_.h}, y_hat);
  }
  revealed_.push_back({x[0], y_});
  return y_;
}

Certificate GeometricEscapeAdversary::certify() const {
  const auto cert = is_member(cls_, BreakpointFunction(revealed_));
  return {cert.member, cert.action,
          "interpolant q-action " + std::to_string(cert.action)};
}

SlowDecayEscapeAdversary::SlowDecayEscapeAdversary(
    GeometricEscapeParams params, WeightFunction g)
    : GeometricEscapeAdversary(params), g_(std::move(g)) {}

double SlowDecayEscapeAdversary::expected_floor(double p) const {
  double s = 0.0;
  for (std::size_t i = 1; i <= params_.steps; ++i) {
    s += g_(step_distance(i));
  }
  return s * loss_pow(params_.h / 2.0, p);
}

bool SlowDecayEscapeAdversary::weight_looks_summable() const {
  const std::size_t probe = std::min<std::size_t>(params_.steps, 60);
  double prev = g_(step_distance(1));
  if (prev == 0.0) return true;
  for (std::size_t i = 2; i <= probe; ++i) {
    const double cur = g_(step_distance(i));
    if (cur > 0.9 * prev) return false;  // decaying slower than geometric
    prev = cur;
  }
  return true;
}

// --- eps step ----------------------------------------------------------

EpsStepAdversary::EpsStepAdversary(EpsStepParams params)
    : params_(params), cls_(SmoothClass::gq(params.q)) {
  if (params_.steps < 1) {
    throw std::invalid_argument("eps_step: steps >= 1 required");
  }
  if (!(params_.p > 0.0) || !(params_.p <= params_.q)) {
    throw std::invalid_argument("eps_step: requires 0 < p <= q");
  }
  if (!(params_.q > 1.0) || std::isinf(params_.q)) {
    throw std::invalid_argument("eps_step: finite q > 1 required");
  }
  eps_ = std::pow(static_cast<double>(params_.steps), -1.0 / params_.q);
}

std::optional<Point> EpsStepAdversary::next_input(std::size_t t) {
  if (t > params_.steps) return std::nullopt;
  return Point{static_cast<double>(t)};
}

double EpsStepAdversary::reveal(std::size_t t, const Point& x, double y_hat) {
  if (t > 0) {
    y_ = pick_farther({y_ - eps_, y_ + eps_}, y_hat);
  }
  revealed_.push_back({x[0], y_});
  return y_;
}

Certificate EpsStepAdversary::certify() const {
  const auto cert = is_member(cls_, BreakpointFunction(revealed_));
  return {cert.member, cert.action,
          "interpolant q-action " + std::to_string(cert.action)};
}

double EpsStepAdversary::forced_floor() const {
  return static_cast<double>(params_.steps) * loss_pow(eps_ / 2.0, params_.p);
}

// --- two-round weighted -------------------------------------------------

TwoRoundWeightedAdversary::TwoRoundWeightedAdversary(TwoRoundParams params)
    : params_(std::move(params)), cls_(SmoothClass::gq(2.0)) {
  if (params_.probe_override > 0.0) {
    probe_ = params_.probe_override;
  } else {
    const SupSearch s = sup_z_times_g(params_.weight);
    if (s.unbounded) {
      throw std::invalid_argument(
          "two_round_weighted: z*g(z) is unbounded, pass probe_override");
    }
    probe_ = s.arg;
  }
}

std::optional<Point> TwoRoundWeightedAdversary::next_input(std::size_t t) {
  if (t == 0) return Point{0.0};
  if (t == 1) return Point{probe_};
  return std::nullopt;
}

double TwoRoundWeightedAdversary::reveal(std::size_t t, const Point& x,
                                         double y_hat) {
  double y = 0.0;
  if (t == 1) {
    const double s = std::sqrt(probe_);
    y = pick_farther({-s, s}, y_hat);
  }
  revealed_.push_back({x[0], y});
  return y;
}

Certificate TwoRoundWeightedAdversary::certify() const {
  const auto cert = is_member(cls_, BreakpointFunction(revealed_));
  return {cert.member, cert.action,
          "interpolant 2-action " + std::to_string(cert.action)};
}

double TwoRoundWeightedAdversary::forced_floor() const {
  return params_.weight(probe_) * probe_;
}

// --- basis probes --------------------------------------------------------

BasisAdversary::BasisAdversary(BasisParams params)
    : params_(params),
      cls_(SmoothClass::truncated_linear(params.n, params.r)) {
  if (params_.n < 1) throw std::invalid_argument("basis: n >= 1 required");
  if (!(params_.r > 0.0)) throw std::invalid_argument("basis: r > 0 required");
  if (!(params_.probe_scale > 0.0)) {
    throw std::invalid_argument("basis: probe_scale > 0 required");
  }
}

std::optional<Point> BasisAdversary::next_input(std::size_t t) {
  if (t > static_cast<std::size_t>(params_.n)) return std::nullopt;
  Point x(params_.n, 0.0);
  if (t > 0) x[t - 1] = params_.probe_scale;
  return x;
}

double BasisAdversary::reveal(std::size_t t, const Point&, double y_hat) {
  if (t == 0) return 0.0;
  const double y = pick_farther({-params_.r, params_.r}, y_hat);
  labels_.push_back(y);
  return y;
}

Certificate BasisAdversary::certify() const {
  // The labels pin v coordinate by coordinate.
  std::vector<double> v(params_.n, 0.0);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    v[i] = labels_[i] / params_.probe_scale;
  }
  Certificate c;
  c.ok = true;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    Point x(params_.n, 0.0);
    x[i] = params_.probe_scale;
    if (std::abs(truncated_linear_evaluate(v, x, params_.r) - labels_[i]) >
        kLabelMatchTol) {
      c.ok = false;
    }
  }
  c.detail = "clipped linear map fitted from probe labels";
  return c;
}

// --- finite families ------------------------------------------------------

std::vector<BreakpointFunction> make_triple_family(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("make_triple_family: eps > 0 required");
  }
  return {
      BreakpointFunction({{1, 1}, {2, 0}, {3, -eps}, {4, 0}, {5, 1}}),
      BreakpointFunction({{1, 1}, {2, 0}, {3, 0}, {4, 0}, {5, -1}}),
      BreakpointFunction({{1, -1}, {2, 0}, {3, eps}, {4, 0}, {5, -1}}),
  };
}

std::vector<BreakpointFunction> make_bitcode_family(std::size_t n,
                                                    double eps) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument(
        "make_bitcode_family: n must be a power of two, n >= 2");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("make_bitcode_family: eps > 0 required");
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  std::vector<BreakpointFunction> family;
  family.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Breakpoint> pts;
    for (std::size_t j = 0; j < k; ++j) {
      const double base = 4.0 * static_cast<double>(j);
      const bool bit = ((i >> j) & 1u) != 0;
      pts.push_back({base, 0.0});
      pts.push_back({base + 1.0, static_cast<double>(i) * eps});
      pts.push_back({base + 2.0, 0.0});
      pts.push_back({base + 3.0, bit ? -1.0 : 1.0});
    }
    family.emplace_back(std::move(pts));
  }
  return family;
}

std::vector<BreakpointFunction> make_onehot_family(std::size_t n, double eps) {
  if (n < 2) {
    throw std::invalid_argument("make_onehot_family: n >= 2 required");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("make_onehot_family: eps > 0 required");
  }
  std::vector<BreakpointFunction> family;
  family.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Breakpoint> pts;
    for (std::size_t j = 0; j <= 2 * n; ++j) {
      pts.push_back({2.0 * static_cast<double>(j), 0.0});
    }
    for (std::size_t j = 1; j <= n; ++j) {
      pts.push_back({4.0 * static_cast<double>(j) - 3.0,
                     static_cast<double>(i) * eps});
      pts.push_back({4.0 * static_cast<double>(j) - 1.0,
                     j == i ? 1.0 : -1.0});
    }
    family.emplace_back(std::move(pts));
  }
  return family;
}

TripleFamilyAdversary::TripleFamilyAdversary(double eps, double p)
    : eps_(eps), p_(p), cls_(SmoothClass::finite(make_triple_family(eps))) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("family:triple: p > 0 required");
  }
  alive_.assign(3, true);
}

std::optional<Point> TripleFamilyAdversary::next_input(std::size_t t) {
  static constexpr double kScript[] = {2.0, 1.0, 4.0, 5.0};
  if (t >= 4) return std::nullopt;
  return Point{kScript[t]};
}

double TripleFamilyAdversary::reveal(std::size_t t, const Point& x,
                                     double y_hat) {
  double y = 0.0;
  if (t == 1) {
    // Reveal -1 only when the guess already concedes the full floor
    // against it; otherwise bank |1 - y_hat| and keep the +-1 split at
    // x = 5 in reserve.
    y = loss_pow(std::abs(y_hat + 1.0), p_) >= forced_floor() ? -1.0 : 1.0;
  } else if (t == 3) {
    y = pick_farther(distinct_alive_values(cls_.members(), alive_, x[0]),
                     y_hat);
  }
  filter_alive(cls_.members(), alive_, x[0], y);
  revealed_.push_back({x[0], y});
  return y;
}

Certificate TripleFamilyAdversary::certify() const {
  return certify_family(cls_, revealed_);
}

double TripleFamilyAdversary::forced_floor() const {
  return 1.0 + std::pow(2.0, -p_);
}

BitcodeFamilyAdversary::BitcodeFamilyAdversary(std::size_t n, double eps,
                                               double p)
    : n_(n), eps_(eps), p_(p),
      cls_(SmoothClass::finite(make_bitcode_family(n, eps))) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("family:bitcode: p > 0 required");
  }
  k_ = 0;
  while ((std::size_t{1} << k_) < n_) ++k_;
  alive_.assign(n_, true);
}

std::optional<Point> BitcodeFamilyAdversary::next_input(std::size_t t) {
  const std::size_t j = t / 2;
  if (j >= k_) return std::nullopt;
  return Point{4.0 * static_cast<double>(j) + (t % 2 == 0 ? 2.0 : 3.0)};
}

double BitcodeFamilyAdversary::reveal(std::size_t t, const Point& x,
                                      double y_hat) {
  double y = 0.0;
  if (t % 2 == 1) {
    y = pick_farther(distinct_alive_values(cls_.members(), alive_, x[0]),
                     y_hat);
  }
  filter_alive(cls_.members(), alive_, x[0], y);
  revealed_.push_back({x[0], y});
  return y;
}

Certificate BitcodeFamilyAdversary::certify() const {
  Certificate c = certify_family(cls_, revealed_);
  // A full run must pin the member exactly: one bit per sign block.
  if (revealed_.size() == 2 * k_ && c.value != 1.0) {
    c.ok = false;
    c.detail += " (expected exactly one)";
  }
  return c;
}

double BitcodeFamilyAdversary::forced_floor() const {
  return static_cast<double>(k_);
}

OneHotFamilyAdversary::OneHotFamilyAdversary(std::size_t n, double eps,
                                             double p)
    : n_(n), eps_(eps), p_(p),
      cls_(SmoothClass::finite(make_onehot_family(n, eps))) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("family:onehot: p > 0 required");
  }
  const double root = std::pow(static_cast<double>(n_ - 1), 1.0 / p_);
  c_ = static_cast<double>(n_ - 1) / loss_pow((1.0 + root) / 2.0, p_);
  threshold_ = std::pow(c_, 1.0 / p_);
}

std::optional<Point> OneHotFamilyAdversary::next_input(std::size_t t) {
  const std::size_t j = t / 2 + 1;
  if (j > n_ - 1) return std::nullopt;
  return Point{4.0 * static_cast<double>(j) - (t % 2 == 0 ? 2.0 : 1.0)};
}

double OneHotFamilyAdversary::reveal(std::size_t t, const Point& x,
                                     double y_hat) {
  double y = 0.0;
  if (committed_) {
    // Locked onto one member; answer with its values from here on.
    y = cls_.members()[committed_j_ - 1](x[0]);
  } else if (t % 2 == 1) {
    const std::size_t j = t / 2 + 1;
    if (std::abs(y_hat - 1.0) >= threshold_) {
      // Guessing away from +1 pays the whole floor at once; commit to
      // the member whose spike sits here.
      y = 1.0;
      committed_ = true;
      committed_j_ = j;
    } else {
      y = -1.0;  // hugging +1 bleeds against -1, one member down
    }
  }
  revealed_.push_back({x[0], y});
  return y;
}

Certificate OneHotFamilyAdversary::certify() const {
  return certify_family(cls_, revealed_);
}

PairFamilyAdversary::PairFamilyAdversary(BreakpointFunction f1,
                                         BreakpointFunction f2)
    : cls_(SmoothClass::finite({f1, f2})),
      witness_(family_m_value(f1, f2)) {
  if (!witness_.has_agreement) {
    throw std::invalid_argument(
        "family:pair: the two members never agree, nothing can be forced");
  }
}

std::optional<Point> PairFamilyAdversary::next_input(std::size_t t) {
  if (t == 0) return Point{witness_.anchor_x};
  if (t == 1) return Point{witness_.arg_x};
  return std::nullopt;
}

double PairFamilyAdversary::reveal(std::size_t t, const Point& x,
                                   double y_hat) {
  const auto& members = cls_.members();
  double y;
  if (t == 0) {
    y = members[0](x[0]);  // agreement point: both values coincide
  } else {
    y = pick_farther({members[0](x[0]), members[1](x[0])}, y_hat);
  }
  revealed_.push_back({x[0], y});
  return y;
}

Certificate PairFamilyAdversary::certify() const {
  return certify_family(cls_, revealed_);
}

AdaptiveFamilyAdversary::AdaptiveFamilyAdversary(
    std::vector<BreakpointFunction> family, std::vector<double> script)
    : cls_(SmoothClass::finite(std::move(family))),
      script_(std::move(script)) {
  alive_.assign(cls_.members().size(), true);
}

AdaptiveFamilyAdversary::AdaptiveFamilyAdversary(
    std::vector<BreakpointFunction> family, std::size_t steps, double radius,
    std::uint64_t seed)
    : cls_(SmoothClass::finite(std::move(family))),
      steps_(steps),
      radius_(radius),
      random_(true),
      rng_(seed) {
  alive_.assign(cls_.members().size(), true);
}

std::optional<Point> AdaptiveFamilyAdversary::next_input(std::size_t t) {
  if (!random_) {
    if (t >= script_.size()) return std::nullopt;
    past_.push_back(script_[t]);
    return Point{script_[t]};
  }
  if (t > steps_) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  bool any = false;
  for (const auto& f : cls_.members()) {
    if (f.empty()) continue;
    lo = any ? std::min(lo, f.front_x()) : f.front_x();
    hi = any ? std::max(hi, f.back_x()) : f.back_x();
    any = true;
  }
  double x;
  if (t == 0 || past_.empty()) {
    x = std::uniform_real_distribution<double>(lo - 1.0, hi + 1.0)(rng_);
  } else if (radius_ > 0.0) {
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(
        0, past_.size() - 1)(rng_);
    x = past_[pick] + 0.999 * radius_ *
                          std::uniform_real_distribution<double>(-1, 1)(rng_);
  } else {
    x = std::uniform_real_distribution<double>(lo - 2.0, hi + 2.0)(rng_);
  }
  past_.push_back(x);
  return Point{x};
}

double AdaptiveFamilyAdversary::reveal(std::size_t, const Point& x,
                                       double y_hat) {
  const double y = pick_farther(
      distinct_alive_values(cls_.members(), alive_, x[0]), y_hat);
  filter_alive(cls_.members(), alive_, x[0], y);
  revealed_.push_back({x[0], y});
  return y;
}

Certificate AdaptiveFamilyAdversary::certify() const {
  return certify_family(cls_, revealed_);
}

std::size_t AdaptiveFamilyAdversary::alive_count() const {
  std::size_t n = 0;
  for (bool b : alive_) n += b ? 1 : 0;
  return n;
}

// --- tent field -------------------------------------------------------------

TentAdversary2D::TentAdversary2D(TentParams params)
    : params_(params),
      cls_(SmoothClass::gqd(params.q, 2)),
      tent_(params.q, params.eta) {
  if (params_.steps < 1) {
    throw std::invalid_argument("tent_2d: steps >= 1 required");
  }
}

std::optional<Point> TentAdversary2D::next_input(std::size_t t) {
  if (t > params_.steps) return std::nullopt;
  const double td = static_cast<double>(t);
  return Point{td * tent_.alpha(), td * tent_.eta()};
}

double TentAdversary2D::reveal(std::size_t t, const Point& x, double y_hat) {
  double y = 0.0;
  if (t > 0) {
    y = pick_farther({0.0, tent_.amplitude()}, y_hat);
    tent_.push_round(y == 0.0 ? 0 : 1);
  }
  revealed_.push_back({x, y});
  return y;
}

Certificate TentAdversary2D::certify() const {
  Certificate c;
  if (!tent_.rectangles_disjoint()) {
    return {false, 0.0, "tent rectangles overlap"};
  }
  for (const auto& [x, y] : revealed_) {
    if (std::abs(tent_.evaluate(x[0], x[1]) - y) > 1e-12) {
      return {false, 0.0, "revealed label off the tent field"};
    }
  }
  // Spot-check slice budgets at every rectangle-critical offset plus a
  // uniform sweep per axis.
  double worst = 0.0;
  for (const Axis axis : {Axis::kX, Axis::kY}) {
    std::vector<double> offsets = tent_.critical_offsets(axis);
    const double step = axis == Axis::kX ? tent_.eta() : tent_.alpha();
    const double span = step * static_cast<double>(tent_.rounds() + 1);
    for (int i = 0; i <= 256; ++i) {
      offsets.push_back(span * static_cast<double>(i) / 256.0);
    }
    for (double off : offsets) {
      worst = std::max(worst, tent_.slice_action(axis, off));
    }
  }
  c.value = worst;
  c.ok = worst <= 1.0 + 1e-12;
  c.detail = "max slice action " + std::to_string(worst);
  return c;
}

// --- random smooth target ----------------------------------------------------

RandomSmoothAdversary::RandomSmoothAdversary(RandomSmoothParams params)
    : params_(params), cls_(SmoothClass::gq(params.q)), rng_(params.seed) {
  if (!(params_.budget > 0.0) || params_.budget > 1.0) {
    throw std::invalid_argument("random_smooth: budget in (0, 1] required");
  }
  if (!(params_.width > 0.0)) {
    throw std::invalid_argument("random_smooth: width > 0 required");
  }
  // Hidden target: random breakpoints, random-walk values, rescaled so
  // the q-action lands exactly on the budget.
  const std::size_t m =
      std::uniform_int_distribution<std::size_t>(6, 14)(rng_);
  std::vector<double> xs;
  while (xs.size() < m) {
    const double x = std::uniform_real_distribution<double>(
        -params_.width, params_.width)(rng_);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<Breakpoint> pts;
  double v = 0.0;
  for (double x : xs) {
    pts.push_back({x, v});
    v += step(rng_);
  }
  BreakpointFunction f(pts);
  double act = q_action(f, params_.q).value;
  if (act == 0.0) {
    pts[0].y += 1.0;
    f = BreakpointFunction(pts);
    act = q_action(f, params_.q).value;
  }
  const double lambda = std::pow(params_.budget / act, 1.0 / params_.q);
  for (Breakpoint& p : pts) p.y *= lambda;
  target_ = BreakpointFunction(std::move(pts));
}

std::optional<Point> RandomSmoothAdversary::next_input(std::size_t t) {
  if (t > params_.steps) return std::nullopt;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double x = 0.0;
  for (int tries = 0; tries < 100; ++tries) {
    if (t == 0 || past_.empty()) {
      x = std::uniform_real_distribution<double>(-params_.width,
                                                 params_.width)(rng_);
    } else if (params_.greedy) {
      // Probe where interpolating the revealed history misses the
      // hidden target the most.
      double best_gap = -1.0;
      for (int c = 0; c < 8; ++c) {
        const std::size_t pick = std::uniform_int_distribution<std::size_t>(
            0, past_.size() - 1)(rng_);
        const double cand = past_[pick] + 0.999 * unit(rng_);
        std::vector<std::pair<double, double>> hist;
        for (const Breakpoint& b : revealed_) sorted_insert(hist, b.x, b.y);
        const double gap = std::abs(target_(cand) - pwl_eval(hist, cand));
        if (gap > best_gap) {
          best_gap = gap;
          x = cand;
        }
      }
    } else {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(
          0, past_.size() - 1)(rng_);
      x = past_[pick] + 0.999 * unit(rng_);
    }
    if (!params_.distinct_inputs ||
        std::find(past_.begin(), past_.end(), x) == past_.end()) {
      break;
    }
  }
  past_.push_back(x);
  return Point{x};
}

double RandomSmoothAdversary::reveal(std::size_t, const Point& x, double) {
  const double y = target_(x[0]);
  revealed_.push_back({x[0], y});
  return y;
}

Certificate RandomSmoothAdversary::certify() const {
  std::vector<std::pair<double, double>> sorted;
  for (const Breakpoint& b : revealed_) sorted_insert(sorted, b.x, b.y);
  std::vector<Breakpoint> pts;
  for (const auto& [x, y] : sorted) pts.push_back({x, y});
  const auto cert = is_member(cls_, BreakpointFunction(std::move(pts)));
  return {cert.member, cert.action,
          "interpolant q-action " + std::to_string(cert.action)};
}

// --- factory ------------------------------------------------------------------

namespace {

std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("adversary params: expected k=v, got '" +
                                  item + "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double get_num(const std::map<std::string, std::string>& kv,
               const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  return std::stod(it->second);
}

std::size_t get_steps(const std::map<std::string, std::string>& kv,
                      std::size_t fallback) {
  // "steps" preferred, "N" accepted; stod so 1e4 works.
  for (const char* key : {"steps", "N"}) {
    if (auto it = kv.find(key); it != kv.end()) {
      return static_cast<std::size_t>(std::llround(std::stod(it->second)));
    }
  }
  return fallback;
}

}  // namespace

std::unique_ptr<Adversary> make_adversary(const std::string& spec,
                                          const GameConfig& config) {
  std::string name = spec;
  std::map<std::string, std::string> kv;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    kv = parse_kv(spec.substr(colon + 1));
  }

  if (name == "geometric_escape" || name == "slow_decay_escape") {
    GeometricEscapeParams p;
    p.c = get_num(kv, "c", 2.0);
    p.q = get_num(kv, "q", config.q);
    p.h = get_num(kv, "h", 0.0);
    p.steps = get_steps(kv, 100);
    if (name == "slow_decay_escape") {
      return std::make_unique<SlowDecayEscapeAdversary>(
          p, config.scenario.weight);
    }
    return std::make_unique<GeometricEscapeAdversary>(p);
  }
  if (name == "eps_step") {
    EpsStepParams p;
    p.steps = get_steps(kv, 1000);
    p.p = get_num(kv, "p", config.p);
    p.q = get_num(kv, "q", config.q);
    return std::make_unique<EpsStepAdversary>(p);
  }
  if (name == "two_round_weighted") {
    TwoRoundParams p;
    p.weight = config.scenario.weight;
    p.probe_override = get_num(kv, "probe", 0.0);
    return std::make_unique<TwoRoundWeightedAdversary>(p);
  }
  if (name == "basis") {
    BasisParams p;
    p.n = static_cast<int>(get_num(kv, "n", 3));
    p.r = get_num(kv, "r", 1.0);
    p.probe_scale = get_num(kv, "probe_scale", 1.0);
    return std::make_unique<BasisAdversary>(p);
  }
  if (name == "family") {
    const auto kind_it = kv.find("kind");
    const std::string kind =
        kind_it == kv.end() ? std::string("triple") : kind_it->second;
    const double eps = get_num(kv, "eps", 0.01);
    if (kind == "triple") {
      return std::make_unique<TripleFamilyAdversary>(eps, config.p);
    }
    if (kind == "bitcode") {
      const auto n = static_cast<std::size_t>(get_num(kv, "n", 4));
      return std::make_unique<BitcodeFamilyAdversary>(n, eps, config.p);
    }
    if (kind == "onehot") {
      const auto n = static_cast<std::size_t>(get_num(kv, "n", 5));
      return std::make_unique<OneHotFamilyAdversary>(n, eps, config.p);
    }
    throw std::invalid_argument("family: unknown kind '" + kind + "'");
  }
  if (name == "tent_2d") {
    TentParams p;
    p.q = get_num(kv, "q", config.q);
    p.eta = get_num(kv, "eta", 0.05);
    p.steps = get_steps(kv, 1000);
    return std::make_unique<TentAdversary2D>(p);
  }
  if (name == "random_smooth") {
    RandomSmoothParams p;
    p.q = get_num(kv, "q", config.q);
    p.budget = get_num(kv, "budget", 1.0);
    p.steps = get_steps(kv, 40);
    p.width = get_num(kv, "width", 5.0);
    p.distinct_inputs = get_num(kv, "distinct", 0.0) != 0.0;
    p.greedy = get_num(kv, "greedy", 0.0) != 0.0;
    p.seed = static_cast<std::uint64_t>(get_num(
        kv, "seed", static_cast<double>(config.seed)));
    return std::make_unique<RandomSmoothAdversary>(p);
  }
  throw std::invalid_argument("make_adversary: unknown adversary '" + name +
                              "'");
}

}  // namespace osl
