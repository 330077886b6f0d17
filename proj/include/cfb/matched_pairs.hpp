#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfb/concordance.hpp"
#include "cfb/distribution.hpp"
#include "cfb/errors.hpp"
#include "cfb/histogram.hpp"
#include "cfb/improper_search.hpp"
#include "cfb/parallel.hpp"
#include "cfb/population.hpp"
#include "cfb/rng.hpp"

namespace cfb {

/// Finite covariate distribution with positive masses.
class CovariateDistribution {
 public:
  explicit CovariateDistribution(std::vector<std::pair<Level, double>> levels)
      : levels_(std::move(levels)) {
    double total = 0.0;
    for (const auto& [x, m] : levels_) {
      if (!(m > 0.0)) throw InvalidArgument("covariate mass must be positive");
      total += m;
    }
    if (levels_.empty() || std::abs(total - 1.0) > kProbTolerance) {
      throw InvalidArgument("covariate masses must sum to 1");
    }
  }

  const std::vector<std::pair<Level, double>>& levels() const { return levels_; }

  double entropy() const {
    double h = 0.0;
    for (const auto& [x, m] : levels_) h -= m * std::log(m);
    return h;
  }

 private:
  std::vector<std::pair<Level, double>> levels_;
};

/// How a treated and a control unit are drawn to form a matched pair.
enum class SamplingScheme {
  /// Draw two units independently and condition on X1 = X2, T1 = 1, T2 = 0.
  SimultaneousConditioning,
  /// Draw a treated unit, then a control unit with the same X.
  SequentialTreatedFirst,
};

/// What the two members of a matched pair must share.
enum class MatchingFactor { Covariate, PredictedBenefit };

inline std::string_view to_string(SamplingScheme s) {
  return s == SamplingScheme::SimultaneousConditioning ? "simultaneous" : "sequential";
}
inline std::string_view to_string(MatchingFactor f) {
  return f == MatchingFactor::Covariate ? "covariate" : "predicted-benefit";
}

/// Covariate distribution of the matched population. Sequential sampling
/// keeps Pr(X | T=1), which equals Pr(X) in an RCT when no treated marginal
/// is supplied.
inline CovariateDistribution x_prime_distribution(
    const CovariateDistribution& xdist, SamplingScheme scheme,
    const std::optional<CovariateDistribution>& treated_marginal = std::nullopt) {
  if (scheme == SamplingScheme::SequentialTreatedFirst) {
    return treated_marginal ? *treated_marginal : xdist;
  }
  double norm = 0.0;
  for (const auto& [x, m] : xdist.levels()) norm += m * m;
  std::vector<std::pair<Level, double>> out;
  for (const auto& [x, m] : xdist.levels()) out.emplace_back(x, m * m / norm);
  return CovariateDistribution(std::move(out));
}

/// h(x) = x^2 - x - 1 on {0, 1, 2}: H = -1 for x in {0, 1}, H = 1 for x = 2.
inline BenefitPredictor predictor_h_quadratic() {
  BenefitPredictor h;
  for (Level x = 0; x <= 2; ++x) h.set(x, static_cast<double>(x * x - x - 1));
  return h;
}

/// Distribution of (B | H) in the matched population built from an RCT
/// source population. The X marginal is preserved (sequential sampling).
///
/// Covariate matching pairs units with equal X, so B | H is the X-mixture of
/// the per-level benefit triples. Predicted-benefit matching pairs any
/// treated unit with any control unit sharing H, so the treated outcome and
/// control outcome come from independently drawn levels x1, x2 in S(H).
inline MatchedBenefitDistribution benefit_given_h(const LogisticRctPopulation& pop,
                                                  const BenefitPredictor& predictor,
                                                  MatchingFactor factor) {
  std::map<double, std::vector<Level>> groups;
  for (Level x = 0; x <= 2; ++x) groups[predictor(x)].push_back(x);

  std::vector<BenefitRow> rows;
  for (const auto& [h, members] : groups) {
    double mass = 0.0;
    for (Level x : members) mass += pop.mass(x);
    if (!(mass > 0.0)) {
      throw ZeroMassH("predicted benefit level " + std::to_string(h) + " has no covariate mass");
    }
    double harm = 0.0, none = 0.0, gain = 0.0;
    if (factor == MatchingFactor::Covariate) {
      for (Level x : members) {
        const double w = pop.mass(x) / mass;
        const ProbTriple t = benefit_triple_from_outcome_probs(outcome_prob(pop, 0, x), outcome_prob(pop, 1, x));
        harm += w * t.minus();
        none += w * t.zero();
        gain += w * t.plus();
      }
    } else {
      for (Level x1 : members) {
        for (Level x2 : members) {
          const double w = pop.mass(x1) / mass * (pop.mass(x2) / mass);
          const ProbTriple t =
              benefit_triple_from_outcome_probs(outcome_prob(pop, 0, x2), outcome_prob(pop, 1, x1));
          harm += w * t.minus();
          none += w * t.zero();
          gain += w * t.plus();
        }
      }
    }
    rows.push_back({h, mass, ProbTriple(harm, none, gain)});
  }
  return MatchedBenefitDistribution(std::move(rows));
}

/// cfb of a matched distribution; two-level distributions use the closed
/// form with c = Pr(H = upper level).
inline CfbResult matched_cfb(const MatchedBenefitDistribution& dist) {
  if (dist.size() == 2) {
    const auto& r = dist.rows();
    return cfb_two_group(r[1].weight, r[0].triple, r[1].triple);
  }
  return cfb(dist);
}

struct MatchingCell {
  std::size_t index;
  double a;
  double b;
  LogisticModel model;
  double cfb_x;
  double cfb_h;
  double abs_diff;
  bool undefined;
};

struct MatchingOptions {
  /// 0.001 gives the 498,501 interior cells 0 < a, b with a + b < 1.
  double step = 0.001;
  double coef_lo = -5.0;
  double coef_hi = 5.0;
  std::uint64_t seed = kDefaultSeed;
  BenefitPredictor predictor = predictor_h_quadratic();
  double hist_lo = 0.0;
  double hist_hi = 0.25;
  std::size_t hist_bins = 50;
  unsigned threads = thread_count();
};

struct MatchingSummary {
  std::size_t cells = 0;
  std::size_t defined = 0;
  double fraction_below_005 = std::numeric_limits<double>::quiet_NaN();
  double max_abs_diff = std::numeric_limits<double>::quiet_NaN();
  double median_abs_diff = std::numeric_limits<double>::quiet_NaN();
};

struct MatchingResult {
  std::vector<MatchingCell> cells;
  Histogram histogram{0.0, 0.25, 50};
  MatchingSummary summary;
};

/// Number of interior grid cells (i, j >= 1, i + j < resolution).
inline std::size_t matching_cell_count(int resolution) {
  const std::size_t d = static_cast<std::size_t>(resolution);
  return d < 3 ? 0 : (d - 1) * (d - 2) / 2;
}

/// For every interior (a, b) cell, draws the four logistic coefficients
/// uniformly from (coef_lo, coef_hi) using stream stream_seed(seed, cell),
/// and compares cfb under covariate and predicted-benefit matching.
/// Cells are indexed row-major in (a, b).
inline MatchingResult matching_experiment(const MatchingOptions& opt = {}) {
  const int d = grid_resolution(opt.step);
  if (!(opt.coef_hi > opt.coef_lo)) throw InvalidArgument("coefficient range is empty");

  std::vector<std::size_t> row_start(static_cast<std::size_t>(std::max(d, 1)), 0);
  std::size_t total = 0;
  for (int i = 1; i < d; ++i) {
    row_start[static_cast<std::size_t>(i)] = total;
    total += static_cast<std::size_t>(std::max(0, d - 1 - i));
  }

  MatchingResult result;
  result.cells.resize(total);
  parallel_for(
      static_cast<std::size_t>(std::max(0, d - 1)),
      [&](std::size_t row) {
        const int i = static_cast<int>(row) + 1;
        for (int j = 1; i + j < d; ++j) {
          const std::size_t idx = row_start[static_cast<std::size_t>(i)] + static_cast<std::size_t>(j - 1);
          Engine eng = make_stream(opt.seed, idx);
          LogisticModel m;
          m.beta0 = uniform(eng, opt.coef_lo, opt.coef_hi);
          m.betax = uniform(eng, opt.coef_lo, opt.coef_hi);
          m.betat = uniform(eng, opt.coef_lo, opt.coef_hi);
          m.betaxt = uniform(eng, opt.coef_lo, opt.coef_hi);
          const double a = static_cast<double>(i) / d;
          const double b = static_cast<double>(j) / d;
          MatchingCell cell{idx, a, b, m, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), false};
          const LogisticRctPopulation pop(a, b, m);
          try {
            cell.cfb_x = matched_cfb(benefit_given_h(pop, opt.predictor, MatchingFactor::Covariate)).value;
            cell.cfb_h =
                matched_cfb(benefit_given_h(pop, opt.predictor, MatchingFactor::PredictedBenefit)).value;
            cell.abs_diff = std::abs(cell.cfb_x - cell.cfb_h);
          } catch (const UndefinedCfb&) {
            cell.undefined = true;
          }
          result.cells[idx] = cell;
        }
      },
      opt.threads);

  result.histogram = Histogram(opt.hist_lo, opt.hist_hi, opt.hist_bins);
  std::vector<double> diffs;
  diffs.reserve(total);
  std::size_t below = 0;
  for (const auto& c : result.cells) {
    if (c.undefined) continue;
    diffs.push_back(c.abs_diff);
    result.histogram.add(c.abs_diff);
    if (c.abs_diff < 0.05) ++below;
  }
  auto& s = result.summary;
  s.cells = total;
  s.defined = diffs.size();
  if (!diffs.empty()) {
    s.fraction_below_005 = static_cast<double>(below) / static_cast<double>(diffs.size());
    s.max_abs_diff = *std::max_element(diffs.begin(), diffs.end());
    s.median_abs_diff = median(std::move(diffs));
  }
  return result;
}

}  // namespace cfb
