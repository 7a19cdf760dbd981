#include "osl/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osl {

namespace {

double scalar_input(const Point& x, const char* who) {
  if (x.size() != 1) {
    throw std::invalid_argument(std::string(who) +
                                ": dimension 1 inputs required");
  }
  return x[0];
}

// Insert (x, y) into a list kept sorted by x; a revisited x overwrites
// the stored value (consistent adversaries never change it).
void sorted_insert(std::vector<std::pair<double, double>>& v, double x,
                   double y) {
  auto it = std::lower_bound(
      v.begin(), v.end(), x,
      [](const std::pair<double, double>& p, double q) { return p.first < q; });
  if (it != v.end() && it->first == x) {
    it->second = y;
  } else {
    v.insert(it, {x, y});
  }
}

}  // namespace

double ZeroLearner::predict(const LearnerState&, const Point&) { return 0.0; }

void LinintLearner::sync(const LearnerState& state) {
  for (; consumed_ < state.history.size(); ++consumed_) {
    const auto& [px, py] = state.history[consumed_];
    sorted_insert(sorted_, scalar_input(px, "linint"), py);
  }
}

double LinintLearner::predict(const LearnerState& state, const Point& xp) {
  sync(state);
  const double x = scalar_input(xp, "linint");
  if (sorted_.empty()) return 0.0;
  if (x <= sorted_.front().first) return sorted_.front().second;
  if (x >= sorted_.back().first) return sorted_.back().second;
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), x,
      [](const std::pair<double, double>& p, double q) { return p.first < q; });
  if (it->first == x) return it->second;
  const auto& [hx, hy] = *it;
  const auto& [lx, ly] = *(it - 1);
  return ly + (x - lx) * (hy - ly) / (hx - lx);
}

void LinintPrimeLearner::sync(const LearnerState& state) {
  for (; consumed_ < state.history.size(); ++consumed_) {
    const auto& [px, py] = state.history[consumed_];
    sorted_insert(sorted_, scalar_input(px, "linint_prime"), py);
  }
}

double LinintPrimeLearner::predict(const LearnerState& state,
                                   const Point& xp) {
  sync(state);
  const double x = scalar_input(xp, "linint_prime");
  if (sorted_.empty()) return 0.0;
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), x,
      [](const std::pair<double, double>& p, double q) { return p.first < q; });
  // Nearest known point at or right of x, within the unit window.
  const bool has_right = it != sorted_.end() && it->first <= x + 1.0;
  // Nearest known point strictly left of x, within the unit window.
  const bool has_left = it != sorted_.begin() && (it - 1)->first >= x - 1.0;
  if (has_right && it->first == x) return it->second;  // exact revisit
  if (has_left && has_right) {
    const auto& [lx, ly] = *(it - 1);
    const auto& [hx, hy] = *it;
    return ly + (x - lx) * (hy - ly) / (hx - lx);
  }
  if (has_left) return (it - 1)->second;
  if (has_right) return it->second;
  return 0.0;
}

void FeasibleMidpointLearner::sync(const LearnerState& state) {
  if (state.class_info == nullptr ||
      state.class_info->kind() != SmoothClass::Kind::kFinite) {
    throw std::invalid_argument(
        "feasible_midpoint: needs a finite family in class_info");
  }
  const auto& members = state.class_info->members();
  if (alive_.empty()) alive_.assign(members.size(), true);
  for (; consumed_ < state.history.size(); ++consumed_) {
    const auto& [px, py] = state.history[consumed_];
    const double x = scalar_input(px, "feasible_midpoint");
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (alive_[i] &&
          std::abs(members[i](x) - py) > kConsistencyTolerance) {
        alive_[i] = false;
      }
    }
  }
}

double FeasibleMidpointLearner::predict(const LearnerState& state,
                                        const Point& xp) {
  sync(state);
  const double x = scalar_input(xp, "feasible_midpoint");
  const auto& members = state.class_info->members();
  bool any = false;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!alive_[i]) continue;
    const double v = members[i](x);
    if (!any) {
      lo = hi = v;
      any = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!any) {
    throw std::runtime_error(
        "feasible_midpoint: no family member is consistent with the history");
  }
  return 0.5 * (lo + hi);
}

void SpanLearner::sync(const LearnerState& state) {
  for (; consumed_ < state.history.size(); ++consumed_) {
    const auto& [px, py] = state.history[consumed_];
    if (py == 0.0) continue;
    // Keep only inputs that enlarge the span; labels of dependent
    // inputs are implied by linearity.
    if (!solve_in_span(px, nullptr, nullptr)) {
      basis_.push_back(px);
      labels_.push_back(py);
    }
  }
}

// Least squares of x against the stored basis via normal equations
// (the basis stays tiny, numerically tame sizes only).  Returns true
// when the residual is negligible relative to |x|.
bool SpanLearner::solve_in_span(const Point& x, std::vector<double>* coeffs,
                                double* residual) const {
  const std::size_t k = basis_.size();
  if (k == 0) {
    if (residual != nullptr) {
      double n2 = 0.0;
      for (double v : x) n2 += v * v;
      *residual = std::sqrt(n2);
    }
    return false;
  }
  std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d) {
        dot += basis_[i][d] * basis_[j][d];
      }
      g[i][j] = dot;
    }
    double dot = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) dot += basis_[i][d] * x[d];
    g[i][k] = dot;
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < k; ++row) {
      if (std::abs(g[row][col]) > std::abs(g[piv][col])) piv = row;
    }
    std::swap(g[piv], g[col]);
    if (std::abs(g[col][col]) < 1e-300) continue;  // basis kept independent
    for (std::size_t row = col + 1; row < k; ++row) {
      const double f = g[row][col] / g[col][col];
      for (std::size_t j = col; j <= k; ++j) g[row][j] -= f * g[col][j];
    }
  }
  std::vector<double> c(k, 0.0);
  for (std::size_t col = k; col-- > 0;) {
    double s = g[col][k];
    for (std::size_t j = col + 1; j < k; ++j) s -= g[col][j] * c[j];
    c[col] = std::abs(g[col][col]) < 1e-300 ? 0.0 : s / g[col][col];
  }
  double r2 = 0.0, n2 = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    double fit = 0.0;
    for (std::size_t i = 0; i < k; ++i) fit += c[i] * basis_[i][d];
    const double diff = x[d] - fit;
    r2 += diff * diff;
    n2 += x[d] * x[d];
  }
  const double res = std::sqrt(r2);
  if (residual != nullptr) *residual = res;
  if (coeffs != nullptr) *coeffs = std::move(c);
  return res <= kResidualTolerance * std::max(1.0, std::sqrt(n2));
}

double SpanLearner::predict(const LearnerState& state, const Point& x) {
  if (state.class_info == nullptr ||
      state.class_info->kind() != SmoothClass::Kind::kTruncatedLinear) {
    throw std::invalid_argument(
        "span: needs a truncated_linear class in class_info");
  }
  sync(state);
  std::vector<double> c;
  if (!solve_in_span(x, &c, nullptr)) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * labels_[i];
  return std::abs(s) <= state.class_info->r() ? s : 0.0;
}

ScaledLearner::ScaledLearner(std::unique_ptr<Learner> base, double radius,
                             double q)
    : base_(std::move(base)), radius_(radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("ScaledLearner: radius > 0 required");
  }
  if (!(q > 1.0) || std::isinf(q)) {
    throw std::invalid_argument("ScaledLearner: finite q > 1 required");
  }
  amp_ = std::pow(radius, (q - 1.0) / q);
}

std::string ScaledLearner::name() const {
  return "scaled(" + base_->name() + ")";
}

double ScaledLearner::predict(const LearnerState& state, const Point& x) {
  shadow_.class_info = state.class_info;
  for (; consumed_ < state.history.size(); ++consumed_) {
    const auto& [px, py] = state.history[consumed_];
    Point z(px.size());
    for (std::size_t d = 0; d < px.size(); ++d) z[d] = px[d] / radius_;
    shadow_.history.emplace_back(std::move(z), py / amp_);
  }
  Point z(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) z[d] = x[d] / radius_;
  return amp_ * base_->predict(shadow_, z);
}

std::unique_ptr<Learner> make_learner(const std::string& name) {
  if (name == "zero") return std::make_unique<ZeroLearner>();
  if (name == "linint") return std::make_unique<LinintLearner>();
  if (name == "linint_prime") return std::make_unique<LinintPrimeLearner>();
  if (name == "feasible_midpoint") {
    return std::make_unique<FeasibleMidpointLearner>();
  }
  if (name == "span") return std::make_unique<SpanLearner>();
  throw std::invalid_argument("make_learner: unknown learner '" + name + "'");
}

const std::vector<std::string>& learner_names() {
  static const std::vector<std::string> kNames{
      "zero", "linint", "linint_prime", "feasible_midpoint", "span"};
  return kNames;
}

}  // namespace osl
