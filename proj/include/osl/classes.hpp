#pragma once

// Hypothesis classes the games are played over:
//
//   Gq(q)               absolutely continuous f with q-action <= 1
//   Ginf                ess sup |f'| <= 1
//   Gqd(q, d)           functions on R^d whose axis-parallel slices all
//                       lie in Gq(q)
//   TruncatedLinear(n,r) x -> v.x clipped to 0 once |v.x| exceeds r
//   Finite(members)     an explicit list of breakpoint functions
//
// plus the separable "tent field" used to defeat slice-bounded learners
// in two dimensions.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "osl/pwl.hpp"

namespace osl {

class SmoothClass {
 public:
  enum class Kind { kGq, kGinf, kGqd, kTruncatedLinear, kFinite };

  static SmoothClass gq(double q);                  // finite q > 1
  static SmoothClass ginf();
  static SmoothClass gqd(double q, int dimension);  // finite q > 1, d >= 1
  static SmoothClass truncated_linear(int n, double r);  // n >= 1, r > 0
  static SmoothClass finite(std::vector<BreakpointFunction> members);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  int dimension() const { return dimension_; }
  int n() const { return n_; }
  double r() const { return r_; }
  const std::vector<BreakpointFunction>& members() const { return members_; }
  std::string describe() const;

 private:
  SmoothClass() = default;
  Kind kind_ = Kind::kGq;
  double q_ = 2.0;
  int dimension_ = 1;
  int n_ = 1;
  double r_ = 1.0;
  std::vector<BreakpointFunction> members_;
};

// Budget check for Gq / Ginf with a small absolute tolerance so that
// constructions sitting exactly on the boundary (action == 1) pass.
struct MembershipCertificate {
  bool member = false;
  double action = 0.0;
  double bound = 1.0;
  std::string detail;
};

inline constexpr double kMembershipTolerance = 1e-12;

MembershipCertificate is_member(const SmoothClass& cls,
                                const BreakpointFunction& f);

// v.x if |v.x| <= r, else 0.  Throws on dimension mismatch.
double truncated_linear_evaluate(const std::vector<double>& v,
                                 const std::vector<double>& x, double r);

// Largest label gap reachable from an agreement point.  For a pair
// f1, f2 let S be the set of x within distance 1 of some point where
// f1 and f2 coincide; the returned m is sup over S of |f1 - f2|, with
// an argmax and a witnessing agreement point within distance 1 of it.
// m/2 is exactly the per-round error an adversary can force with the
// pair, hence "m-value".  Computed by exact segment algebra on the
// merged breakpoint grid (roots of the difference are rational in the
// endpoint values).
struct AgreementWitness {
  double m = 0.0;
  double arg_x = 0.0;     // where |f1 - f2| attains m inside the dilated set
  double anchor_x = 0.0;  // agreement point with |arg_x - anchor_x| <= 1
  bool has_agreement = false;
  // Constant extension keeps |f1 - f2| bounded, so the sup is always
  // attained; the flag is part of the interface for exotic callers.
  bool unbounded = false;
};

AgreementWitness family_m_value(const BreakpointFunction& f1,
                                const BreakpointFunction& f2);

// Two-dimensional field built from disjoint rectangles R_t centred at
// (t*alpha, t*eta) on the unit-step diagonal, alpha = sqrt(1 - eta^2).
// On R_t the field is the product phi(y - t*eta) * v_sigma(x - t*alpha)
// of two normalised tents; sigma in {0, 1} selects the zero function or
// amplitude a.  The amplitude is the largest value keeping every
// axis-parallel slice inside the q-action budget:
//
//   a = min( (2 L^(1-q))^(-1/q), (2 b^(1-q))^(-1/q) ),  L = alpha/4,
//   b = eta/4.
//
// Every slice is itself piecewise linear, so slice actions come out of
// the exact segment sum in pwl.hpp.
enum class Axis { kX, kY };

class SeparableTentFunction {
 public:
  // Requires finite q > 1 and 0 < eta < 1/10 (keeps 2L < alpha and
  // 2b < eta so the rectangles are pairwise disjoint).
  SeparableTentFunction(double q, double eta);

  void push_round(int sigma);  // appends round t = rounds()+1, sigma in {0,1}
  std::size_t rounds() const { return sigma_.size(); }

  double evaluate(double x, double y) const;
  BreakpointFunction slice(Axis axis, double offset) const;
  double slice_action(Axis axis, double offset) const;

  // Offsets where a slice budget could peak: rectangle boundaries and
  // centrelines.  For Axis::kX slices the offset is a y-value and vice
  // versa.
  std::vector<double> critical_offsets(Axis axis) const;

  double q() const { return q_; }
  double eta() const { return eta_; }
  double alpha() const { return alpha_; }
  double half_width_x() const { return hx_; }  // L
  double half_width_y() const { return hy_; }  // b
  double amplitude() const { return a_; }
  int sigma(std::size_t t) const { return sigma_.at(t - 1); }
  bool rectangles_disjoint() const;

 private:
  // Index of the rectangle containing the coordinate, if any.
  std::optional<std::size_t> locate(double coord, double step,
                                    double half) const;

  double q_;
  double eta_;
  double alpha_;
  double hx_;
  double hy_;
  double a_;
  std::vector<int> sigma_;  // sigma_[t-1] is the round-t choice
};

// JSON forms, e.g. {"kind":"gq","q":2} or
// {"kind":"finite","members":[[[0,0],[1,1]], ...]}.
void to_json(nlohmann::json& j, const SmoothClass& cls);
void from_json(const nlohmann::json& j, SmoothClass& cls);

}  // namespace osl
