#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cfb/errors.hpp"
#include "cfb/histogram.hpp"
#include "cfb/improper_search.hpp"
#include "cfb/population.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// Outcome probabilities (Pr(Y(0)=1), Pr(Y(1)=1)) at one covariate level.
struct OutcomePair {
  double y0;
  double y1;
};

inline constexpr double kDiscriminantClamp = 1e-12;
inline constexpr double kReconstructionTolerance = 1e-10;

/// Discriminant of y1^2 + (p- - 1 - p+) y1 + p+ = 0, the equation Pr(Y(1)=1)
/// must satisfy when Y(0) and Y(1) are independent given X.
inline double discriminant(const ProbTriple& t) {
  const double b = t.minus() - 1.0 - t.plus();
  return b * b - 4.0 * t.plus();
}

inline double reconstruction_error(const OutcomePair& o, const ProbTriple& t) {
  const ProbTriple r = benefit_triple_from_outcome_probs(o.y0, o.y1);
  double err = 0.0;
  for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(r[i] - t[i]));
  return err;
}

/// All (y0, y1) in [0,1]^2 with p- = y0 (1 - y1) and p+ = y1 (1 - y0).
/// Empty when the triple cannot come from independent counterfactuals.
inline std::vector<OutcomePair> solve_outcome_probs(const ProbTriple& t) {
  double disc = discriminant(t);
  if (disc < -kDiscriminantClamp) return {};
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  const double centre = t.plus() + 1.0 - t.minus();

  std::vector<OutcomePair> out;
  for (double y1 : {0.5 * (centre - root), 0.5 * (centre + root)}) {
    if (y1 < -kProbTolerance || y1 > 1.0 + kProbTolerance) continue;
    y1 = std::clamp(y1, 0.0, 1.0);
    double y0;
    if (1.0 - y1 > kProbTolerance) {
      y0 = t.minus() / (1.0 - y1);
    } else {
      // y1 = 1 forces p- = 0 and leaves y0 to the gain equation p+ = 1 - y0.
      if (t.minus() > kProbTolerance) continue;
      y0 = 1.0 - t.plus();
    }
    if (y0 < -kProbTolerance || y0 > 1.0 + kProbTolerance) continue;
    const OutcomePair o{std::clamp(y0, 0.0, 1.0), y1};
    if (reconstruction_error(o, t) > kReconstructionTolerance) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const OutcomePair& e) {
      return std::abs(e.y0 - o.y0) < 1e-9 && std::abs(e.y1 - o.y1) < 1e-9;
    });
    if (!duplicate) out.push_back(o);
  }
  return out;
}

struct RealizabilityResult {
  bool realizable;
  std::vector<OutcomePair> roots_x0;
  std::vector<OutcomePair> roots_x1;
  double discriminant_x0;
  double discriminant_x1;
};

inline RealizabilityResult realizability(const ProbTriple& p, const ProbTriple& q) {
  RealizabilityResult r{false, solve_outcome_probs(p), solve_outcome_probs(q), discriminant(p),
                        discriminant(q)};
  r.realizable = !r.roots_x0.empty() && !r.roots_x1.empty();
  return r;
}

struct RealizableRecord {
  ImproperRecord record;
  OutcomePair x0;
  OutcomePair x1;
};

struct ScreenSummary {
  std::size_t input_count = 0;
  std::size_t count = 0;
  double min = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  double mean = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
};

struct ScreenResult {
  std::vector<RealizableRecord> records;
  ScreenSummary summary;
};

/// Keeps the improper records whose two triples are both realizable from
/// independent counterfactual outcomes. Records are passed through
/// unchanged and in input order; the first root of each level is attached.
inline ScreenResult screen_improper_set(const std::vector<ImproperRecord>& records,
                                        GridArithmetic arithmetic = GridArithmetic::Binary64) {
  ScreenResult out;
  out.summary.input_count = records.size();
  std::vector<double> values;
  double sum = 0.0;
  for (const auto& rec : records) {
    const auto r0 = solve_outcome_probs(grid_probabilities(rec.p, arithmetic));
    if (r0.empty()) continue;
    const auto r1 = solve_outcome_probs(grid_probabilities(rec.q, arithmetic));
    if (r1.empty()) continue;
    out.records.push_back({rec, r0.front(), r1.front()});
    values.push_back(rec.cfb_star);
    sum += rec.cfb_star;
  }
  auto& s = out.summary;
  s.count = values.size();
  if (!values.empty()) {
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.mean = sum / static_cast<double>(values.size());
    s.median = median(std::move(values));
  }
  return out;
}

/// Saturated logistic parameters from the four outcome probabilities
/// y_tx = Pr(Y=1 | T=t, X=x), t, x in {0, 1}.
inline LogisticModel logistic_params_from_probs(double y00, double y01, double y10, double y11) {
  const double l00 = logit(y00);
  const double l01 = logit(y01);
  const double l10 = logit(y10);
  const double l11 = logit(y11);
  LogisticModel m;
  m.beta0 = l00;
  m.betax = l01 - l00;
  m.betat = l10 - l00;
  m.betaxt = l11 - l01 - m.betat;
  return m;
}

}  // namespace cfb
