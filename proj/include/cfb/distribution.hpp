#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "cfb/errors.hpp"
#include "cfb/population.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// One predicted-benefit level: H = h with probability `weight`, and the
/// conditional benefit distribution B | H = h.
struct BenefitRow {
  double h;
  double weight;
  ProbTriple triple;
};

/// Distribution of (B | H) with a finite set of distinct prediction levels,
/// stored in strictly increasing order of h.
class MatchedBenefitDistribution {
 public:
  explicit MatchedBenefitDistribution(std::vector<BenefitRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidArgument("benefit distribution has no rows");
    double total = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!(rows_[i].weight > 0.0)) throw InvalidArgument("row weight must be positive");
      if (i > 0 && !(rows_[i].h > rows_[i - 1].h)) {
        throw InvalidArgument("prediction levels must be strictly increasing");
      }
      total += rows_[i].weight;
    }
    if (std::abs(total - 1.0) > kProbTolerance) {
      throw InvalidArgument("row weights must sum to 1, got " + std::to_string(total));
    }
  }

  /// Builds a distribution from unsorted rows, merging rows that share an h
  /// value into a weighted mixture and dropping zero-weight rows.
  static MatchedBenefitDistribution from_unsorted(std::vector<BenefitRow> rows) {
    std::erase_if(rows, [](const BenefitRow& r) { return r.weight == 0.0; });
    std::stable_sort(rows.begin(), rows.end(),
                     [](const BenefitRow& l, const BenefitRow& r) { return l.h < r.h; });
    std::vector<BenefitRow> merged;
    for (const auto& r : rows) {
      if (!merged.empty() && merged.back().h == r.h) {
        auto& m = merged.back();
        const double w = m.weight + r.weight;
        auto mix = [&](std::size_t i) { return (m.weight * m.triple[i] + r.weight * r.triple[i]) / w; };
        m.triple = ProbTriple(mix(0), mix(1), mix(2));
        m.weight = w;
      } else {
        merged.push_back(r);
      }
    }
    return MatchedBenefitDistribution(std::move(merged));
  }

  const std::vector<BenefitRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Marginal distribution of B.
  ProbTriple marginal() const {
    double m = 0, z = 0, p = 0;
    for (const auto& r : rows_) {
      m += r.weight * r.triple.minus();
      z += r.weight * r.triple.zero();
      p += r.weight * r.triple.plus();
    }
    return ProbTriple(m, z, p);
  }

  /// Same rows with every h negated (reverses the predictor's ordering).
  MatchedBenefitDistribution negated() const {
    std::vector<BenefitRow> rows(rows_.rbegin(), rows_.rend());
    for (auto& r : rows) r.h = -r.h;
    return MatchedBenefitDistribution(std::move(rows));
  }

 private:
  std::vector<BenefitRow> rows_;
};

/// Pushes a discrete population through a predictor to get (B | H).
inline MatchedBenefitDistribution benefit_distribution(std::span<const LevelAtom> levels,
                                                       const BenefitPredictor& predictor) {
  std::vector<BenefitRow> rows;
  rows.reserve(levels.size());
  for (const auto& l : levels) rows.push_back({predictor(l.x), l.mass, l.triple});
  return MatchedBenefitDistribution::from_unsorted(std::move(rows));
}

inline MatchedBenefitDistribution benefit_distribution(const BinaryXPopulation& pop,
                                                       const BenefitPredictor& predictor) {
  const auto levels = pop.levels();
  return benefit_distribution(std::span<const LevelAtom>(levels), predictor);
}

/// A weighted prediction value.
struct PredictionAtom {
  double h;
  double weight;
};

/// Gini mean difference E|H1 - H2| over two independent draws of H.
inline double gini_mean_difference(std::span<const PredictionAtom> atoms) {
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      sum += 2.0 * atoms[i].weight * atoms[j].weight * std::abs(atoms[i].h - atoms[j].h);
    }
  }
  return sum;
}

inline double gini_mean_difference(const MatchedBenefitDistribution& dist) {
  std::vector<PredictionAtom> atoms;
  atoms.reserve(dist.size());
  for (const auto& r : dist.rows()) atoms.push_back({r.h, r.weight});
  return gini_mean_difference(atoms);
}

}  // namespace cfb
