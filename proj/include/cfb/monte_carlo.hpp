#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <vector>

#include "cfb/distribution.hpp"
#include "cfb/errors.hpp"
#include "cfb/parallel.hpp"
#include "cfb/population.hpp"
#include "cfb/rng.hpp"

namespace cfb {

/// One simulated unit: realised benefit and its prediction.
struct BenefitDraw {
  double b;
  double h;
};

template <class S>
concept BenefitSampler = requires(const S& s, Engine& eng) {
  { s(eng) } -> std::convertible_to<BenefitDraw>;
};

struct McOptions {
  /// Pairs per independently seeded stream in disjoint-pair mode.
  std::size_t chunk_pairs = std::size_t{1} << 16;
  /// Score all n(n-1)/2 pairs of one sample instead of n/2 disjoint pairs.
  /// Only allowed for n <= kMaxAllPairs.
  bool all_pairs = false;
  unsigned threads = thread_count();
};

inline constexpr std::size_t kMaxAllPairs = 10'000;

struct McResult {
  double estimate;
  /// Standard error of the mean pair score. Exact for disjoint pairs; in
  /// all-pairs mode it ignores the dependence between overlapping pairs and
  /// is optimistic.
  double standard_error;
  std::size_t scored_pairs;
  std::size_t total_pairs;
};

namespace detail {

struct ScoreSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t scored = 0;
  std::size_t total = 0;

  void add(const BenefitDraw& u, const BenefitDraw& v) {
    ++total;
    if (u.b == v.b) return;
    const double s = (u.b - v.b) * (u.h - v.h);
    const double score = s > 0 ? 1.0 : (u.h == v.h ? 0.5 : 0.0);
    sum += score;
    sum_sq += score * score;
    ++scored;
  }
  void merge(const ScoreSums& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    scored += o.scored;
    total += o.total;
  }
};

inline McResult finish(const ScoreSums& s) {
  if (s.scored == 0) throw UndefinedCfb("cfb is undefined: no sampled pair has B1 != B2");
  const double n = static_cast<double>(s.scored);
  const double mean = s.sum / n;
  const double var = std::max(0.0, s.sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), s.scored, s.total};
}

}  // namespace detail

/// Monte Carlo cfb from `n` i.i.d. draws of (B, H).
///
/// Default mode pairs the sample into floor(n/2) disjoint pairs, so pair
/// scores are independent and the binomial-style standard error is valid.
/// Draws are split into chunks of `chunk_pairs` pairs; chunk i uses stream
/// stream_seed(seed, i), so the result does not depend on the thread count.
template <BenefitSampler Sampler>
McResult cfb_monte_carlo(const Sampler& sampler, std::size_t n, std::uint64_t seed,
                         const McOptions& opt = {}) {
  if (n < 2) throw InvalidArgument("Monte Carlo cfb needs at least two draws");

  if (opt.all_pairs) {
    if (n > kMaxAllPairs) throw InvalidArgument("all-pairs mode is limited to n <= 10000");
    Engine eng = make_stream(seed, 0);
    std::vector<BenefitDraw> draws(n);
    for (auto& d : draws) d = sampler(eng);
    detail::ScoreSums s;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s.add(draws[i], draws[j]);
    }
    return detail::finish(s);
  }

  const std::size_t pairs = n / 2;
  const std::size_t chunk = std::max<std::size_t>(1, opt.chunk_pairs);
  const std::size_t chunks = (pairs + chunk - 1) / chunk;
  std::vector<detail::ScoreSums> partial(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        Engine eng = make_stream(seed, c);
        const std::size_t count = std::min(chunk, pairs - c * chunk);
        detail::ScoreSums s;
        for (std::size_t i = 0; i < count; ++i) {
          const BenefitDraw u = sampler(eng);
          const BenefitDraw v = sampler(eng);
          s.add(u, v);
        }
        partial[c] = s;
      },
      opt.threads);
  detail::ScoreSums total;
  for (const auto& s : partial) total.merge(s);
  return detail::finish(total);
}

/// Binary X population scored with an arbitrary predictor.
class BinaryXSampler {
 public:
  BinaryXSampler(BinaryXPopulation pop, BenefitPredictor predictor)
      : pop_(std::move(pop)), h0_(predictor(0)), h1_(predictor(1)) {}

  BenefitDraw operator()(Engine& eng) const {
    const bool one = uniform01(eng) < pop_.c();
    const auto& t = one ? pop_.triple1() : pop_.triple0();
    return {static_cast<double>(sample_benefit(eng, t)), one ? h1_ : h0_};
  }

 private:
  BinaryXPopulation pop_;
  double h0_;
  double h1_;
};

/// Beta-distributed X with interpolated benefit triples, scored with h*(X).
class BetaXSampler {
 public:
  explicit BetaXSampler(BetaXPopulation pop) : pop_(std::move(pop)) {}

  BenefitDraw operator()(Engine& eng) const {
    const double x = sample_beta(eng, pop_.alpha(), pop_.beta());
    const ProbTriple t = interpolate_triple(x, pop_.triple0(), pop_.triple1());
    return {static_cast<double>(sample_benefit(eng, t)), t.mean()};
  }

 private:
  BetaXPopulation pop_;
};

/// Draws (B, H) directly from a (B | H) distribution.
class DistributionSampler {
 public:
  explicit DistributionSampler(MatchedBenefitDistribution dist) : dist_(std::move(dist)) {
    double acc = 0.0;
    for (const auto& r : dist_.rows()) cumulative_.push_back(acc += r.weight);
  }

  BenefitDraw operator()(Engine& eng) const {
    const double u = uniform01(eng) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t i = std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
    const auto& row = dist_.rows()[i];
    return {static_cast<double>(sample_benefit(eng, row.triple)), row.h};
  }

 private:
  MatchedBenefitDistribution dist_;
  std::vector<double> cumulative_;
};

}  // namespace cfb
