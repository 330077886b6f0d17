#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cfb/concordance.hpp"
#include "cfb/errors.hpp"
#include "cfb/histogram.hpp"
#include "cfb/monte_carlo.hpp"
#include "cfb/parallel.hpp"
#include "cfb/population.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// Probability triple on a grid with `resolution` units per 1, e.g.
/// resolution 100 stores hundredths. Components are exact integers summing
/// to the resolution.
struct GridTriple {
  int minus;
  int zero;
  int plus;

  int resolution() const { return minus + zero + plus; }
  int mean_units() const { return plus - minus; }

  ProbTriple exact() const {
    const double d = resolution();
    return ProbTriple(minus / d, zero / d, plus / d);
  }

  friend auto operator<=>(const GridTriple&, const GridTriple&) = default;
};

/// How grid conditions and cfb* are evaluated.
///
/// Exact: integer arithmetic on grid units; ties in h* are ties.
///
/// Binary64: each probability is the double k * step, the zero level is
/// (1 - minus) - plus in double, and both conditions are evaluated in
/// double exactly as written below. This mirrors a straightforward
/// floating-point search and reproduces its treatment of near-ties (for
/// example 0.97 - 0.03 < 0.94 in double).
enum class GridArithmetic { Exact, Binary64 };

inline std::string_view to_string(GridArithmetic a) {
  return a == GridArithmetic::Exact ? "exact" : "binary64";
}

inline GridArithmetic parse_grid_arithmetic(std::string_view s) {
  if (s == "exact") return GridArithmetic::Exact;
  if (s == "binary64") return GridArithmetic::Binary64;
  throw InvalidArgument("unknown grid arithmetic '" + std::string(s) + "'");
}

/// q+ - q- > p+ - p-: the X=1 group has the larger best prediction.
inline bool upper_level_ranked_higher(const ProbTriple& p, const ProbTriple& q) {
  return q.plus() - q.minus() > p.plus() - p.minus();
}

/// q+ - q- + q- p+ < p+ - p- + q+ p-: discordant mass exceeds concordant mass.
inline bool discordance_dominates(const ProbTriple& p, const ProbTriple& q) {
  return q.plus() - q.minus() + q.minus() * p.plus() < p.plus() - p.minus() + q.plus() * p.minus();
}

inline bool upper_level_ranked_higher(const GridTriple& p, const GridTriple& q) {
  return q.mean_units() > p.mean_units();
}

/// Same condition scaled by resolution^2, in exact integers.
inline bool discordance_dominates(const GridTriple& p, const GridTriple& q) {
  const std::int64_t d = p.resolution();
  const std::int64_t lhs = d * (q.plus - q.minus) + std::int64_t{q.minus} * p.plus;
  const std::int64_t rhs = d * (p.plus - p.minus) + std::int64_t{q.plus} * p.minus;
  return lhs < rhs;
}

/// sum_{a>b} q_a p_b < sum_{a<b} q_a p_b, in exact integers.
inline bool discordance_dominates_pairwise(const GridTriple& p, const GridTriple& q) {
  const std::int64_t concordant = std::int64_t{q.plus} * p.zero + std::int64_t{q.plus} * p.minus +
                                  std::int64_t{q.zero} * p.minus;
  const std::int64_t discordant = std::int64_t{q.minus} * p.zero + std::int64_t{q.minus} * p.plus +
                                  std::int64_t{q.zero} * p.plus;
  return concordant < discordant;
}

/// Grid resolution for a step, which must be 1/D for an integer D.
inline int grid_resolution(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw InvalidArgument("grid step must lie in (0,1]");
  const double inv = 1.0 / step;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded || rounded > 2000) {
    throw InvalidArgument("grid step must be 1/D for an integer D <= 2000");
  }
  return static_cast<int>(rounded);
}

/// Every grid triple at the given resolution, ordered by (minus, zero, plus).
inline std::vector<GridTriple> grid_triples(int resolution, bool binary_benefit_only = false) {
  std::vector<GridTriple> out;
  for (int m = 0; m <= resolution; ++m) {
    for (int z = 0; z <= resolution - m; ++z) {
      if (binary_benefit_only && z != 0) continue;
      out.push_back({m, z, resolution - m - z});
    }
  }
  return out;
}

/// Probability triple for a grid point under the chosen arithmetic.
inline ProbTriple grid_probabilities(const GridTriple& t, GridArithmetic arithmetic) {
  if (arithmetic == GridArithmetic::Exact) return t.exact();
  const double step = 1.0 / t.resolution();
  const double m = t.minus * step;
  const double p = t.plus * step;
  return ProbTriple(m, 1.0 - m - p, p);
}

struct ImproperRecord {
  GridTriple p;
  GridTriple q;
  double cfb_star;
};

struct SearchOptions {
  double step = 0.01;
  double c = 0.5;
  GridArithmetic arithmetic = GridArithmetic::Binary64;
  bool binary_benefit_only = false;
  double hist_lo = 0.41;
  double hist_hi = 0.50;
  std::size_t hist_bins = 50;
  unsigned threads = thread_count();
};

struct SearchSummary {
  std::size_t candidates = 0;
  std::size_t count = 0;
  double min = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
  GridTriple argmin_p{};
  GridTriple argmin_q{};
  Histogram histogram{0.41, 0.50, 50};
};

struct SearchResult {
  std::vector<ImproperRecord> records;
  SearchSummary summary;
};

inline SearchSummary summarize_records(const std::vector<ImproperRecord>& records, double hist_lo,
                                       double hist_hi, std::size_t bins) {
  SearchSummary s;
  s.histogram = Histogram(hist_lo, hist_hi, bins);
  s.count = records.size();
  if (records.empty()) return s;
  std::vector<double> values;
  values.reserve(records.size());
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    values.push_back(r.cfb_star);
    s.histogram.add(r.cfb_star);
    if (r.cfb_star < s.min) {
      s.min = r.cfb_star;
      s.argmin_p = r.p;
      s.argmin_q = r.q;
    }
    s.max = std::max(s.max, r.cfb_star);
  }
  s.median = median(std::move(values));
  return s;
}

/// Enumerates every ordered pair (P for X=0, Q for X=1) of grid triples and
/// keeps the pairs where h* ranks Q higher and discordance dominates, with
/// cfb* below 0.5.
/// Records come out sorted by (P, Q).
inline SearchResult grid_search(const SearchOptions& opt = {}) {
  if (!(opt.c > 0.0 && opt.c < 1.0)) throw InvalidArgument("c must lie in (0,1)");
  const int resolution = grid_resolution(opt.step);
  const auto grid = grid_triples(resolution, opt.binary_benefit_only);
  std::vector<ProbTriple> probs;
  probs.reserve(grid.size());
  for (const auto& g : grid) probs.push_back(grid_probabilities(g, opt.arithmetic));

  const bool exact = opt.arithmetic == GridArithmetic::Exact;
  std::vector<std::vector<ImproperRecord>> per_p(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        auto& out = per_p[i];
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const bool keep = exact ? upper_level_ranked_higher(grid[i], grid[j]) && discordance_dominates(grid[i], grid[j])
                                  : upper_level_ranked_higher(probs[i], probs[j]) && discordance_dominates(probs[i], probs[j]);
          if (!keep) continue;
          const double v = cfb_two_group(opt.c, probs[i], probs[j]).value;
          if (v < 0.5) out.push_back({grid[i], grid[j], v});
        }
      },
      opt.threads);

  SearchResult result;
  std::size_t total = 0;
  for (const auto& v : per_p) total += v.size();
  result.records.reserve(total);
  for (auto& v : per_p) result.records.insert(result.records.end(), v.begin(), v.end());
  result.summary = summarize_records(result.records, opt.hist_lo, opt.hist_hi, opt.hist_bins);
  result.summary.candidates = grid.size() * grid.size();
  return result;
}

/// cfb* for X ~ Beta(alpha, beta) with interpolated triples, by Monte Carlo.
inline McResult continuous_improper_eval(double alpha, double beta, const ProbTriple& p,
                                         const ProbTriple& q, std::size_t n, std::uint64_t seed,
                                         const McOptions& opt = {}) {
  if (!upper_level_ranked_higher(p, q) || !discordance_dominates(p, q)) {
    throw InvalidArgument("endpoint triples must satisfy both improperness inequalities");
  }
  return cfb_monte_carlo(BetaXSampler(BetaXPopulation(alpha, beta, p, q)), n, seed, opt);
}

}  // namespace cfb
