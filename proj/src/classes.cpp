#include "osl/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;
};

// Union of closed intervals, input need not be sorted.
std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const Interval& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

SmoothClass SmoothClass::gq(double q) {
  if (!(q > 1.0) || q == kInf) {
    throw std::invalid_argument("SmoothClass::gq: requires finite q > 1");
  }
  SmoothClass c;
  c.kind_ = Kind::kGq;
  c.q_ = q;
  return c;
}

SmoothClass SmoothClass::ginf() {
  SmoothClass c;
  c.kind_ = Kind::kGinf;
  c.q_ = kInf;
  return c;
}

SmoothClass SmoothClass::gqd(double q, int dimension) {
  if (!(q > 1.0) || q == kInf) {
    throw std::invalid_argument("SmoothClass::gqd: requires finite q > 1");
  }
  if (dimension < 1) {
    throw std::invalid_argument("SmoothClass::gqd: dimension >= 1 required");
  }
  SmoothClass c;
  c.kind_ = Kind::kGqd;
  c.q_ = q;
  c.dimension_ = dimension;
  return c;
}

SmoothClass SmoothClass::truncated_linear(int n, double r) {
  if (n < 1 || !(r > 0.0)) {
    throw std::invalid_argument(
        "SmoothClass::truncated_linear: n >= 1 and r > 0 required");
  }
  SmoothClass c;
  c.kind_ = Kind::kTruncatedLinear;
  c.n_ = n;
  c.dimension_ = n;
  c.r_ = r;
  return c;
}

SmoothClass SmoothClass::finite(std::vector<BreakpointFunction> members) {
  if (members.empty()) {
    throw std::invalid_argument("SmoothClass::finite: family must be nonempty");
  }
  SmoothClass c;
  c.kind_ = Kind::kFinite;
  c.members_ = std::move(members);
  return c;
}

std::string SmoothClass::describe() const {
  switch (kind_) {
    case Kind::kGq:
      return "gq(q=" + std::to_string(q_) + ")";
    case Kind::kGinf:
      return "ginf";
    case Kind::kGqd:
      return "gqd(q=" + std::to_string(q_) +
             ",d=" + std::to_string(dimension_) + ")";
    case Kind::kTruncatedLinear:
      return "truncated_linear(n=" + std::to_string(n_) +
             ",r=" + std::to_string(r_) + ")";
    case Kind::kFinite:
      return "finite(" + std::to_string(members_.size()) + " members)";
  }
  return "?";
}

MembershipCertificate is_member(const SmoothClass& cls,
                                const BreakpointFunction& f) {
  if (cls.kind() != SmoothClass::Kind::kGq &&
      cls.kind() != SmoothClass::Kind::kGinf) {
    throw std::invalid_argument(
        "is_member: budget check only applies to gq/ginf");
  }
  MembershipCertificate cert;
  cert.bound = 1.0;
  cert.action = q_action(f, cls.q()).value;
  cert.member = cert.action <= cert.bound + kMembershipTolerance;
  cert.detail = cls.describe();
  return cert;
}

double truncated_linear_evaluate(const std::vector<double>& v,
                                 const std::vector<double>& x, double r) {
  if (v.size() != x.size()) {
    throw std::invalid_argument(
        "truncated_linear_evaluate: dimension mismatch");
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument("truncated_linear_evaluate: r > 0 required");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * x[i];
  return std::abs(dot) <= r ? dot : 0.0;
}

AgreementWitness family_m_value(const BreakpointFunction& f1,
                                const BreakpointFunction& f2) {
  AgreementWitness out;

  // Merged breakpoint grid; the difference h = f1 - f2 is linear between
  // consecutive grid points and constant outside them.
  std::vector<double> xs;
  for (const Breakpoint& p : f1.points()) xs.push_back(p.x);
  for (const Breakpoint& p : f2.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const auto h = [&](double x) { return f1(x) - f2(x); };

  if (xs.empty()) {  // both functions identically zero
    out.m = 0.0;
    out.has_agreement = true;
    return out;
  }

  // Agreement components: closed intervals (points count as [x, x]),
  // with +-inf marking the constant extension rays.
  std::vector<Interval> agree;
  std::vector<double> hv(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) hv[i] = h(xs[i]);

  if (hv.front() == 0.0) agree.push_back({-kInf, xs.front()});
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = hv[i], b = hv[i + 1];
    if (a == 0.0 && b == 0.0) {
      agree.push_back({xs[i], xs[i + 1]});
    } else if (a == 0.0) {
      agree.push_back({xs[i], xs[i]});
    } else if (b == 0.0) {
      agree.push_back({xs[i + 1], xs[i + 1]});
    } else if ((a < 0.0) != (b < 0.0)) {
      const double root = xs[i] + a * (xs[i + 1] - xs[i]) / (a - b);
      agree.push_back({root, root});
    }
  }
  if (hv.back() == 0.0) agree.push_back({xs.back(), kInf});
  agree = merge_intervals(std::move(agree));

  if (agree.empty()) {
    // The functions never coincide; an adversary cannot hide which one
    // it committed to past round zero, so no gap is reachable.
    return out;
  }
  out.has_agreement = true;

  // Dilate by one unit, then clip to a window beyond which h is constant
  // (so the clipped endpoints still realise the extension values).
  const double win_lo = xs.front() - 2.0;
  const double win_hi = xs.back() + 2.0;
  std::vector<Interval> dilated;
  for (const Interval& iv : agree) {
    dilated.push_back({std::max(iv.lo - 1.0, win_lo),
                       std::min(iv.hi + 1.0, win_hi)});
  }
  dilated = merge_intervals(std::move(dilated));

  // |h| is piecewise linear, so its sup over a closed interval union is
  // attained at an interval endpoint or an interior grid point.
  double best = -1.0;
  double best_x = 0.0;
  auto consider = [&](double x) {
    const double v = std::abs(h(x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  };
  for (const Interval& iv : dilated) {
    consider(iv.lo);
    consider(iv.hi);
    for (double x : xs) {
      if (x > iv.lo && x < iv.hi) consider(x);
    }
  }
  out.m = best;
  out.arg_x = best_x;

  // Nearest agreement point to the argmax; by construction it is within
  // distance one.
  double bd = kInf;
  for (const Interval& iv : agree) {
    const double cl = std::clamp(best_x, std::max(iv.lo, win_lo),
                                 std::min(iv.hi, win_hi));
    const double d = std::abs(best_x - cl);
    if (d < bd) {
      bd = d;
      out.anchor_x = cl;
    }
  }
  return out;
}

SeparableTentFunction::SeparableTentFunction(double q, double eta) : q_(q) {
  if (!(q > 1.0) || q == kInf) {
    throw std::invalid_argument(
        "SeparableTentFunction: requires finite q > 1");
  }
  if (!(eta > 0.0) || !(eta < 0.1)) {
    throw std::invalid_argument(
        "SeparableTentFunction: eta must lie in (0, 1/10)");
  }
  eta_ = eta;
  alpha_ = std::sqrt(1.0 - eta * eta);
  hx_ = alpha_ / 4.0;
  hy_ = eta_ / 4.0;
  const double ax = std::pow(2.0 * std::pow(hx_, 1.0 - q), -1.0 / q);
  const double ay = std::pow(2.0 * std::pow(hy_, 1.0 - q), -1.0 / q);
  a_ = std::min(ax, ay);
}

void SeparableTentFunction::push_round(int sigma) {
  if (sigma != 0 && sigma != 1) {
    throw std::invalid_argument("push_round: sigma must be 0 or 1");
  }
  sigma_.push_back(sigma);
}

std::optional<std::size_t> SeparableTentFunction::locate(double coord,
                                                         double step,
                                                         double half) const {
  if (sigma_.empty()) return std::nullopt;
  // Rectangles are centred at t*step; with half < step/2 at most one can
  // contain the coordinate.
  const auto t = static_cast<long long>(std::llround(coord / step));
  if (t < 1 || static_cast<std::size_t>(t) > sigma_.size()) return std::nullopt;
  if (std::abs(coord - static_cast<double>(t) * step) > half) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(t);
}

double SeparableTentFunction::evaluate(double x, double y) const {
  const auto tx = locate(x, alpha_, hx_);
  const auto ty = locate(y, eta_, hy_);
  if (!tx || !ty || *tx != *ty) return 0.0;
  const std::size_t t = *tx;
  if (sigma_[t - 1] == 0) return 0.0;
  const double u = 1.0 - std::abs(x - static_cast<double>(t) * alpha_) / hx_;
  const double ph = 1.0 - std::abs(y - static_cast<double>(t) * eta_) / hy_;
  return a_ * u * ph;
}

BreakpointFunction SeparableTentFunction::slice(Axis axis,
                                                double offset) const {
  // Cutting across x at a fixed y (or vice versa) leaves at most one
  // tent of height a * (1 - |offset distance| / half) over the matching
  // rectangle; everything else is zero.
  const double cross_step = axis == Axis::kX ? eta_ : alpha_;
  const double cross_half = axis == Axis::kX ? hy_ : hx_;
  const auto t = locate(offset, cross_step, cross_half);
  if (!t || sigma_[*t - 1] == 0) return BreakpointFunction{};
  const double height =
      a_ * (1.0 -
            std::abs(offset - static_cast<double>(*t) * cross_step) /
                cross_half);
  const double along_step = axis == Axis::kX ? alpha_ : eta_;
  const double along_half = axis == Axis::kX ? hx_ : hy_;
  const double c = static_cast<double>(*t) * along_step;
  return BreakpointFunction{
      {{c - along_half, 0.0}, {c, height}, {c + along_half, 0.0}}};
}

double SeparableTentFunction::slice_action(Axis axis, double offset) const {
  return q_action(slice(axis, offset), q_).value;
}

std::vector<double> SeparableTentFunction::critical_offsets(Axis axis) const {
  const double step = axis == Axis::kX ? eta_ : alpha_;
  const double half = axis == Axis::kX ? hy_ : hx_;
  std::vector<double> out;
  out.reserve(3 * sigma_.size());
  for (std::size_t t = 1; t <= sigma_.size(); ++t) {
    const double c = static_cast<double>(t) * step;
    out.push_back(c - half);
    out.push_back(c);
    out.push_back(c + half);
  }
  return out;
}

bool SeparableTentFunction::rectangles_disjoint() const {
  return 2.0 * hx_ < alpha_ && 2.0 * hy_ < eta_;
}

void to_json(nlohmann::json& j, const SmoothClass& cls) {
  switch (cls.kind()) {
    case SmoothClass::Kind::kGq:
      j = {{"kind", "gq"}, {"q", cls.q()}};
      break;
    case SmoothClass::Kind::kGinf:
      j = {{"kind", "ginf"}};
      break;
    case SmoothClass::Kind::kGqd:
      j = {{"kind", "gqd"}, {"q", cls.q()}, {"d", cls.dimension()}};
      break;
    case SmoothClass::Kind::kTruncatedLinear:
      j = {{"kind", "truncated_linear"}, {"n", cls.n()}, {"r", cls.r()}};
      break;
    case SmoothClass::Kind::kFinite: {
      nlohmann::json members = nlohmann::json::array();
      for (const auto& m : cls.members()) {
        nlohmann::json jm;
        to_json(jm, m);
        members.push_back(jm);
      }
      j = {{"kind", "finite"}, {"members", members}};
      break;
    }
  }
}

void from_json(const nlohmann::json& j, SmoothClass& cls) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gq") {
    cls = SmoothClass::gq(j.at("q").get<double>());
  } else if (kind == "ginf") {
    cls = SmoothClass::ginf();
  } else if (kind == "gqd") {
    cls = SmoothClass::gqd(j.at("q").get<double>(), j.at("d").get<int>());
  } else if (kind == "truncated_linear") {
    cls = SmoothClass::truncated_linear(j.at("n").get<int>(),
                                        j.at("r").get<double>());
  } else if (kind == "finite") {
    std::vector<BreakpointFunction> members;
    for (const auto& jm : j.at("members")) {
      BreakpointFunction f;
      from_json(jm, f);
      members.push_back(std::move(f));
    }
    cls = SmoothClass::finite(std::move(members));
  } else {
    throw std::invalid_argument("SmoothClass: unknown kind " + kind);
  }
}

}  // namespace osl
