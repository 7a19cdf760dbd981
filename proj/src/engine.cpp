#include "osl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace osl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double loss_pow(double err, double p) {
  if (p == 1.0) return err;
  if (p == 2.0) return err * err;
  return std::pow(err, p);
}

}  // namespace

double euclidean(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("euclidean: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Scenario Scenario::base() { return Scenario{}; }

Scenario Scenario::s1(double radius) {
  Scenario s;
  s.kind = Kind::kS1;
  s.radius = radius;
  return s;
}

Scenario Scenario::s2(double radius) {
  Scenario s;
  s.kind = Kind::kS2;
  s.radius = radius;
  return s;
}

Scenario Scenario::s3(WeightFunction weight) {
  Scenario s;
  s.kind = Kind::kS3;
  s.weight = std::move(weight);
  return s;
}

std::string Scenario::name() const {
  switch (kind) {
    case Kind::kBase:
      return "base";
    case Kind::kS1:
      return "s1";
    case Kind::kS2:
      return "s2";
    case Kind::kS3:
      return "s3:" + weight.label();
  }
  return "?";
}

void GameConfig::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("GameConfig: p > 0 required");
  if (!(q > 1.0)) throw std::invalid_argument("GameConfig: q > 1 required");
  if (horizon < 1) throw std::invalid_argument("GameConfig: horizon >= 1");
  if (dimension < 1) throw std::invalid_argument("GameConfig: dimension >= 1");
  if ((kind() == Scenario::Kind::kS1 || kind() == Scenario::Kind::kS2) &&
      !(scenario.radius > 0.0)) {
    throw std::invalid_argument("GameConfig: radius > 0 required");
  }
}

Scenario::Kind GameConfig::kind() const { return scenario.kind; }

std::string GameConfig::summary() const {
  std::ostringstream os;
  os << "p=" << p << " q=" << q << " scenario=" << scenario.name()
     << " radius=" << scenario.radius << " horizon=" << horizon
     << " dim=" << dimension << " seed=" << seed;
  return os.str();
}

std::uint64_t GameConfig::hash() const {
  // FNV-1a over the printable summary; stable across runs by design.
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : summary()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

ProtocolViolationError::ProtocolViolationError(std::size_t t, double delta,
                                               double radius)
    : std::runtime_error("s1 protocol violation at round " + std::to_string(t) +
                         ": delta=" + std::to_string(delta) + " exceeds radius " +
                         std::to_string(radius)),
      round_(t) {}

DuplicateInputError::DuplicateInputError(std::size_t t)
    : std::runtime_error("s3 duplicate input at round " + std::to_string(t)),
      round_(t) {}

Transcript run_game(const GameConfig& config, Learner& learner,
                    Adversary& adversary) {
  config.validate();
  Transcript tr;
  tr.config = config;
  LearnerState state;
  state.class_info = adversary.target_class();

  for (std::size_t t = 0; t < config.horizon; ++t) {
    auto maybe_x = adversary.next_input(t);
    if (!maybe_x) break;
    Point x = std::move(*maybe_x);
    if (static_cast<int>(x.size()) != config.dimension) {
      throw std::invalid_argument("run_game: adversary input has dimension " +
                                  std::to_string(x.size()) + ", expected " +
                                  std::to_string(config.dimension));
    }

    Round round;
    round.t = t;
    round.delta = kNaN;
    if (t > 0) {
      double best = std::numeric_limits<double>::infinity();
      for (const Round& prev : tr.rounds) {
        best = std::min(best, euclidean(x, prev.x));
      }
      round.delta = best;
    }

    round.y_hat = learner.predict(state, x);
    round.y_true = adversary.reveal(t, x, round.y_hat);
    round.x = std::move(x);

    round.counted = t > 0;
    round.weight = 1.0;
    switch (config.scenario.kind) {
      case Scenario::Kind::kBase:
        break;
      case Scenario::Kind::kS1:
        if (t > 0 && !within_cutoff(round.delta, config.scenario.radius)) {
          throw ProtocolViolationError(t, round.delta, config.scenario.radius);
        }
        break;
      case Scenario::Kind::kS2:
        round.counted =
            t > 0 && within_cutoff(round.delta, config.scenario.radius);
        break;
      case Scenario::Kind::kS3:
        if (t > 0) {
          if (round.delta == 0.0) throw DuplicateInputError(t);
          round.weight = config.scenario.weight(round.delta);
        }
        break;
    }

    round.loss_term =
        round.counted
            ? round.weight *
                  loss_pow(std::abs(round.y_hat - round.y_true), config.p)
            : 0.0;
    tr.cumulative_loss += round.loss_term;
    state.history.emplace_back(round.x, round.y_true);
    tr.rounds.push_back(std::move(round));
  }
  return tr;
}

void Transcript::write_jsonl(std::ostream& os) const {
  for (const Round& r : rounds) {
    nlohmann::json j{{"t", r.t},
                     {"x", r.x},
                     {"y_hat", r.y_hat},
                     {"y_true", r.y_true},
                     {"counted", r.counted},
                     {"weight", r.weight},
                     {"loss", r.loss_term}};
    if (std::isnan(r.delta)) {
      j["delta"] = nullptr;
    } else {
      j["delta"] = r.delta;
    }
    os << j.dump() << '\n';
  }
}

std::string Transcript::csv_summary_header() {
  return "config_hash,scenario,p,q,rounds,cumulative_loss";
}

std::string Transcript::csv_summary() const {
  std::ostringstream os;
  os << config.hash() << ',' << config.scenario.name() << ',' << config.p
     << ',' << config.q << ',' << rounds.size() << ','
     << std::setprecision(17) << cumulative_loss;
  return os.str();
}

double weighted_loss(const Transcript& transcript, const WeightFunction& h) {
  double total = 0.0;
  for (const Round& r : transcript.rounds) {
    if (r.t == 0) continue;
    const double err = std::abs(r.y_hat - r.y_true);
    total += h(r.delta) * loss_pow(err, transcript.config.p);
  }
  return total;
}

RatioBoundReport ratio_bound_check(const Transcript& transcript,
                                   const WeightFunction& g,
                                   const WeightFunction& h) {
  RatioBoundReport rep;
  rep.c_gh = ratio_sup(g, h);
  rep.loss_g = weighted_loss(transcript, g);
  rep.loss_h = weighted_loss(transcript, h);
  if (std::isinf(rep.c_gh)) {
    rep.vacuous = true;
    rep.holds = true;
    return rep;
  }
  // Pure float-noise slack; the inequality itself holds round by round.
  const double bound = rep.c_gh * rep.loss_g;
  rep.holds = rep.loss_h <= bound + 1e-12 * std::max(1.0, bound);
  return rep;
}

bool is_admissible(const std::vector<Point>& xs, double radius,
                   std::size_t* first_bad) {
  for (std::size_t t = 1; t < xs.size(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < t; ++j) {
      best = std::min(best, euclidean(xs[t], xs[j]));
    }
    if (!within_cutoff(best, radius)) {
      if (first_bad != nullptr) *first_bad = t;
      return false;
    }
  }
  return true;
}

MonotonicityReport scenario_monotonicity_check(
    const std::vector<Point>& xs, const std::vector<double>& abs_errors,
    double radius_lo, double radius_hi, double p) {
  if (!(radius_lo <= radius_hi)) {
    throw std::invalid_argument(
        "scenario_monotonicity_check: radius_lo <= radius_hi required");
  }
  if (xs.size() != abs_errors.size() + 1) {
    throw std::invalid_argument(
        "scenario_monotonicity_check: need one error per round t >= 1");
  }
  MonotonicityReport rep;
  for (std::size_t t = 1; t < xs.size(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < t; ++j) {
      best = std::min(best, euclidean(xs[t], xs[j]));
    }
    const double term = loss_pow(std::abs(abs_errors[t - 1]), p);
    if (within_cutoff(best, radius_lo)) {
      rep.counted_lo.push_back(t);
      rep.loss_lo += term;
    }
    if (within_cutoff(best, radius_hi)) {
      rep.counted_hi.push_back(t);
      rep.loss_hi += term;
    }
  }
  rep.nested = std::includes(rep.counted_hi.begin(), rep.counted_hi.end(),
                             rep.counted_lo.begin(), rep.counted_lo.end());
  rep.holds = rep.nested && rep.loss_lo <= rep.loss_hi;
  return rep;
}

MembershipCertificate validate_transcript_against_class(
    const Transcript& transcript, const SmoothClass& cls) {
  if (transcript.config.dimension != 1) {
    throw std::invalid_argument(
        "validate_transcript_against_class: dimension 1 only");
  }
  std::vector<Breakpoint> pts;
  for (const Round& r : transcript.rounds) {
    bool seen = false;
    for (const Breakpoint& p : pts) {
      if (p.x == r.x[0]) {
        seen = true;
        break;
      }
    }
    if (!seen) pts.push_back({r.x[0], r.y_true});
  }
  return is_member(cls, BreakpointFunction(std::move(pts)));
}

}  // namespace osl
