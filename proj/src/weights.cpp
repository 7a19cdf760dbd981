#include "osl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridLo = 1e-9;
constexpr double kGridHi = 1e9;
constexpr int kGridPoints = 601;

// Golden-section maximisation on [lo, hi]; assumes a unimodal bracket,
// which the preceding grid scan supplies.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double* arg) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-8 * std::max(1.0, std::abs(a));
       ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  if (arg != nullptr) *arg = xm;
  return f(xm);
}

SupSearch numeric_sup(const std::function<double(double)>& f) {
  // Log-spaced scan to find the rough peak, then a local refinement.
  double best = -kInf;
  int best_i = 0;
  const double step =
      std::log(kGridHi / kGridLo) / static_cast<double>(kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    const double z = kGridLo * std::exp(step * static_cast<double>(i));
    const double v = f(z);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  SupSearch out;
  if (best_i == kGridPoints - 1) {
    // Still climbing at the right edge of a 18-decade bracket: treat as
    // unbounded.
    out.unbounded = true;
    out.value = kInf;
    out.arg = kGridHi;
    return out;
  }
  const double lo = kGridLo * std::exp(step * std::max(0, best_i - 1));
  const double hi = kGridLo * std::exp(step * (best_i + 1));
  out.value = golden_max(f, lo, hi, &out.arg);
  return out;
}

}  // namespace

WeightFunction::WeightFunction() = default;

WeightFunction WeightFunction::identity() {
  WeightFunction w;
  w.kind_ = Kind::kIdentity;
  w.label_ = "id";
  w.noninc_ = true;
  return w;
}

WeightFunction WeightFunction::exponential(double c) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("WeightFunction::exponential: c > 0 required");
  }
  WeightFunction w;
  w.kind_ = Kind::kExponential;
  w.c_ = c;
  w.label_ = "exp:c=" + std::to_string(c);
  w.noninc_ = true;
  return w;
}

WeightFunction WeightFunction::indicator() {
  WeightFunction w;
  w.kind_ = Kind::kIndicator;
  w.label_ = "indicator";
  w.noninc_ = true;
  return w;
}

WeightFunction WeightFunction::constant_one() {
  WeightFunction w;
  w.kind_ = Kind::kConstantOne;
  w.label_ = "one";
  w.noninc_ = true;
  return w;
}

WeightFunction WeightFunction::custom(std::string label,
                                      std::function<double(double)> fn,
                                      bool nonincreasing_hint) {
  if (!fn) {
    throw std::invalid_argument("WeightFunction::custom: empty callable");
  }
  if (nonincreasing_hint) {
    // Spot check over six decades; a hint that is grossly wrong would
    // silently break monotone reasoning downstream.
    double prev = kInf;
    for (int i = -6; i <= 6; ++i) {
      const double v = fn(std::pow(10.0, i));
      if (v > prev * (1.0 + 1e-9)) {
        throw std::invalid_argument(
            "WeightFunction::custom: nonincreasing hint contradicted at z=1e" +
            std::to_string(i));
      }
      prev = v;
    }
  }
  WeightFunction w;
  w.kind_ = Kind::kCustom;
  w.label_ = std::move(label);
  w.fn_ = std::move(fn);
  w.noninc_ = nonincreasing_hint;
  return w;
}

WeightFunction WeightFunction::tabulated(
    std::string label, std::vector<std::pair<double, double>> pts,
    bool nonincreasing_hint) {
  if (pts.empty()) {
    throw std::invalid_argument("WeightFunction::tabulated: no samples");
  }
  std::sort(pts.begin(), pts.end());
  auto fn = [pts = std::move(pts)](double z) {
    if (z <= pts.front().first) return pts.front().second;
    if (z >= pts.back().first) return pts.back().second;
    auto it = std::lower_bound(
        pts.begin(), pts.end(), z,
        [](const std::pair<double, double>& p, double v) { return p.first < v; });
    if (it->first == z) return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.second +
           (z - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
  };
  return custom(std::move(label), std::move(fn), nonincreasing_hint);
}

double WeightFunction::operator()(double z) const {
  switch (kind_) {
    case Kind::kIdentity:
      if (!(z > 0.0)) {
        throw std::domain_error("identity weight needs z > 0");
      }
      return 1.0 / z;
    case Kind::kExponential:
      return std::exp(-c_ * z);
    case Kind::kIndicator:
      return within_cutoff(z, 1.0) ? 1.0 : 0.0;
    case Kind::kConstantOne:
      return 1.0;
    case Kind::kCustom:
      return fn_(z);
  }
  return 0.0;
}

SupSearch sup_z_times_g(const WeightFunction& g) {
  SupSearch out;
  switch (g.kind()) {
    case WeightFunction::Kind::kIdentity:
      out.value = 1.0;  // z * (1/z)
      out.arg = 1.0;
      return out;
    case WeightFunction::Kind::kExponential:
      // d/dz (z e^{-cz}) = 0 at z = 1/c.
      out.arg = 1.0 / g.exp_rate();
      out.value = out.arg * std::exp(-1.0);
      return out;
    case WeightFunction::Kind::kIndicator:
      out.value = 1.0;
      out.arg = 1.0;
      return out;
    case WeightFunction::Kind::kConstantOne:
      out.unbounded = true;
      out.value = kInf;
      out.arg = kInf;
      return out;
    case WeightFunction::Kind::kCustom:
      return numeric_sup([&](double z) { return z * g(z); });
  }
  return out;
}

double ratio_sup(const WeightFunction& g, const WeightFunction& h) {
  using K = WeightFunction::Kind;
  if (g.kind() == K::kIndicator) {
    throw std::invalid_argument(
        "ratio_sup: base weight must be strictly positive on (0, inf)");
  }
  const K gk = g.kind(), hk = h.kind();
  if (gk == hk) {
    switch (gk) {
      case K::kIdentity:
      case K::kIndicator:
      case K::kConstantOne:
        return 1.0;
      case K::kExponential:
        // exp((c_g - c_h) z): bounded iff h decays at least as fast.
        return h.exp_rate() >= g.exp_rate() ? 1.0 : kInf;
      case K::kCustom:
        break;  // fall through to the numeric search
    }
  }
  if (gk == K::kConstantOne) {
    if (hk == K::kExponential || hk == K::kIndicator) return 1.0;  // sup h
    if (hk == K::kIdentity) return kInf;                           // z -> 0
  }
  if (gk == K::kIdentity) {
    if (hk == K::kExponential) {
      // sup z e^{-cz} = 1/(c e) at z = 1/c.
      return 1.0 / (h.exp_rate() * std::exp(1.0));
    }
    if (hk == K::kIndicator) return 1.0;  // sup_{z <= 1} z
    if (hk == K::kConstantOne) return kInf;
  }
  if (gk == K::kExponential) {
    if (hk == K::kConstantOne || hk == K::kIdentity) return kInf;
    if (hk == K::kIndicator) return std::exp(g.exp_rate());  // sup_{z<=1} e^{cz}
  }
  const SupSearch s = numeric_sup([&](double z) { return h(z) / g(z); });
  return s.unbounded ? kInf : s.value;
}

}  // namespace osl
