#include <gtest/gtest.h>

#include <random>

#include "cfb/cfb.hpp"
#include "oracles.hpp"

namespace {

using cfb::MatchingFactor;

// Pr(B | H) by enumerating treated level x1, control level x2 and both
// outcomes. Covariate matching forces x1 = x2.
std::map<double, std::pair<double, std::array<double, 3>>> enumerate_matching(
    double a, double b, const cfb::LogisticModel& m, const std::map<int, double>& h, bool covariate) {
  const double mass[3] = {a, b, 1 - a - b};
  auto prob = [&](int t, int x) { return oracle::expit(m.beta0 + m.betax * x + m.betat * t + m.betaxt * t * x); };
  std::map<double, double> hmass;
  for (int x = 0; x < 3; ++x) hmass[h.at(x)] += mass[x];
  std::map<double, std::pair<double, std::array<double, 3>>> out;
  for (int x1 = 0; x1 < 3; ++x1) {
    for (int x2 = 0; x2 < 3; ++x2) {
      if (h.at(x1) != h.at(x2)) continue;
      if (covariate && x1 != x2) continue;
      const double hm = hmass[h.at(x1)];
      const double w = covariate ? mass[x1] / hm : mass[x1] / hm * mass[x2] / hm;
      const auto ob = oracle::observed_benefit(prob(1, x1), prob(0, x2));
      auto& row = out[h.at(x1)];
      row.first = hm;
      for (int k = 0; k < 3; ++k) row.second[k] += w * ob[k];
    }
  }
  return out;
}

const std::map<int, double> kQuadratic{{0, -1.0}, {1, -1.0}, {2, 1.0}};

TEST(BenefitGivenH, HandValuesForQuadraticPredictor) {
  const cfb::LogisticModel m{0.0, 2.0, 0.0, 2.0};
  const cfb::LogisticRctPopulation pop(0.25, 0.25, m);
  const auto h = cfb::predictor_h_quadratic();
  const auto x = cfb::benefit_given_h(pop, h, MatchingFactor::Covariate);
  const auto hb = cfb::benefit_given_h(pop, h, MatchingFactor::PredictedBenefit);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_DOUBLE_EQ(x.rows()[0].h, -1.0);
  EXPECT_DOUBLE_EQ(x.rows()[0].weight, 0.5);
  // Five-decimal hand values, truncated.
  EXPECT_NEAR(x.rows()[0].triple.plus(), 0.18353, 1e-5);
  EXPECT_NEAR(hb.rows()[0].triple.plus(), 0.22941, 1e-5);
  EXPECT_NEAR(x.rows()[0].triple.minus(), 0.13293, 1e-5);
  EXPECT_NEAR(hb.rows()[0].triple.minus(), 0.17881, 1e-5);

  for (bool covariate : {true, false}) {
    const auto ref = enumerate_matching(0.25, 0.25, m, kQuadratic, covariate);
    const auto& got = covariate ? x : hb;
    for (const auto& row : got.rows()) {
      const auto& [w, t] = ref.at(row.h);
      EXPECT_NEAR(row.weight, w, 1e-15);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(row.triple[static_cast<std::size_t>(k)], t[k], 1e-14);
    }
  }
}

TEST(BenefitGivenH, MatchesEnumerationOnRandomPopulations) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coef(-5, 5), u(0.01, 0.98);
  const auto h = cfb::predictor_h_quadratic();
  for (int i = 0; i < 1'000; ++i) {
    const double a = u(rng) * 0.98, b = (1 - a) * u(rng);
    const cfb::LogisticModel m{coef(rng), coef(rng), coef(rng), coef(rng)};
    const cfb::LogisticRctPopulation pop(a, b, m);
    for (auto f : {MatchingFactor::Covariate, MatchingFactor::PredictedBenefit}) {
      const auto ref = enumerate_matching(a, b, m, kQuadratic, f == MatchingFactor::Covariate);
      std::vector<oracle::Level> levels;
      for (const auto& [hv, row] : ref) levels.push_back({hv, row.first, row.second});
      const double expected = oracle::cfb(levels);
      ASSERT_NEAR(cfb::matched_cfb(cfb::benefit_given_h(pop, h, f)).value, expected, 1e-12);
    }
  }
}

TEST(BenefitGivenH, BijectivePredictorMakesFactorsAgree) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coef(-5, 5), u(0.01, 0.98);
  const cfb::BenefitPredictor identity({{0, 0.0}, {1, 1.0}, {2, 2.0}});
  for (int i = 0; i < 1'000; ++i) {
    const double a = u(rng) * 0.98, b = (1 - a) * u(rng);
    const cfb::LogisticRctPopulation pop(a, b, {coef(rng), coef(rng), coef(rng), coef(rng)});
    const double x = cfb::matched_cfb(cfb::benefit_given_h(pop, identity, MatchingFactor::Covariate)).value;
    const double hh =
        cfb::matched_cfb(cfb::benefit_given_h(pop, identity, MatchingFactor::PredictedBenefit)).value;
    ASSERT_NEAR(x, hh, 1e-12);
  }
}

TEST(BenefitGivenH, MeanBenefitAgreesAcrossFactors) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coef(-5, 5), u(0.01, 0.98);
  const auto h = cfb::predictor_h_quadratic();
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng) * 0.98, b = (1 - a) * u(rng);
    const cfb::LogisticRctPopulation pop(a, b, {coef(rng), coef(rng), coef(rng), coef(rng)});
    const auto x = cfb::benefit_given_h(pop, h, MatchingFactor::Covariate).marginal();
    const auto hh = cfb::benefit_given_h(pop, h, MatchingFactor::PredictedBenefit).marginal();
    ASSERT_NEAR(x.mean(), hh.mean(), 1e-12);

    // Covariate matching keeps the population benefit marginal.
    double gain = 0.0;
    for (int lvl = 0; lvl < 3; ++lvl) {
      gain += pop.mass(lvl) * cfb::benefit_triple_from_outcome_probs(cfb::outcome_prob(pop, 0, lvl),
                                                                     cfb::outcome_prob(pop, 1, lvl))
                                  .plus();
    }
    ASSERT_NEAR(x.plus(), gain, 1e-12);
  }
}

TEST(BenefitGivenH, ZeroMassLevelThrows) {
  const cfb::LogisticRctPopulation pop(0.5, 0.5, {0, 1, 1, 1});
  EXPECT_THROW(cfb::benefit_given_h(pop, cfb::predictor_h_quadratic(), MatchingFactor::Covariate),
               cfb::ZeroMassH);
}

TEST(SamplingScheme, SimultaneousConditioningConcentrates) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 1'000; ++i) {
    const double w0 = u(rng), w1 = u(rng), w2 = u(rng), s = w0 + w1 + w2;
    const cfb::CovariateDistribution d({{0, w0 / s}, {1, w1 / s}, {2, w2 / s}});
    const auto sim = cfb::x_prime_distribution(d, cfb::SamplingScheme::SimultaneousConditioning);
    const auto seq = cfb::x_prime_distribution(d, cfb::SamplingScheme::SequentialTreatedFirst);
    ASSERT_LE(sim.entropy(), d.entropy() + 1e-12);
    ASSERT_DOUBLE_EQ(seq.entropy(), d.entropy());
    double expected0 = (w0 / s) * (w0 / s) / ((w0 * w0 + w1 * w1 + w2 * w2) / (s * s));
    ASSERT_NEAR(sim.levels()[0].second, expected0, 1e-12);
  }
  const cfb::CovariateDistribution d({{0, 0.5}, {1, 0.5}});
  const cfb::CovariateDistribution treated({{0, 0.2}, {1, 0.8}});
  EXPECT_DOUBLE_EQ(
      cfb::x_prime_distribution(d, cfb::SamplingScheme::SequentialTreatedFirst, treated).levels()[1].second,
      0.8);
  EXPECT_THROW(cfb::CovariateDistribution({{0, 0.5}, {1, 0.6}}), cfb::InvalidArgument);
}

TEST(MatchingExperiment, CellCounts) {
  EXPECT_EQ(cfb::matching_cell_count(1000), 498'501u);
  EXPECT_EQ(cfb::matching_cell_count(100), 4'851u);
  EXPECT_EQ(cfb::matching_cell_count(2), 0u);
}

TEST(MatchingExperiment, CoarseRunIsDeterministicAndConsistent) {
  cfb::MatchingOptions opt;
  opt.step = 0.02;
  opt.threads = 1;
  const auto a = cfb::matching_experiment(opt);
  opt.threads = 3;
  const auto b = cfb::matching_experiment(opt);
  ASSERT_EQ(a.cells.size(), cfb::matching_cell_count(50));
  EXPECT_EQ(a.summary.cells, a.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& c = a.cells[i];
    ASSERT_EQ(c.index, i);
    ASSERT_EQ(c.model.beta0, b.cells[i].model.beta0);
    ASSERT_EQ(c.abs_diff, b.cells[i].abs_diff);
    ASSERT_GT(c.a, 0.0);
    ASSERT_GT(c.b, 0.0);
    ASSERT_LT(c.a + c.b, 1.0);
    for (double beta : {c.model.beta0, c.model.betax, c.model.betat, c.model.betaxt}) {
      ASSERT_GE(beta, -5.0);
      ASSERT_LT(beta, 5.0);
    }
  }
  std::size_t in_hist = 0;
  for (auto n : a.histogram.counts()) in_hist += n;
  EXPECT_EQ(in_hist, a.summary.defined);

  // Spot-check cells against the enumeration oracle.
  for (std::size_t i = 0; i < a.cells.size(); i += 97) {
    const auto& c = a.cells[i];
    for (bool covariate : {true, false}) {
      std::vector<oracle::Level> levels;
      for (const auto& [hv, row] : enumerate_matching(c.a, c.b, c.model, kQuadratic, covariate)) {
        levels.push_back({hv, row.first, row.second});
      }
      EXPECT_NEAR(covariate ? c.cfb_x : c.cfb_h, oracle::cfb(levels), 1e-12);
    }
  }
}

TEST(MatchingExperiment, SeedChangesCoefficients) {
  cfb::MatchingOptions opt;
  opt.step = 0.1;
  const auto a = cfb::matching_experiment(opt);
  opt.seed += 1;
  const auto b = cfb::matching_experiment(opt);
  EXPECT_NE(a.cells[0].model.beta0, b.cells[0].model.beta0);
}

}  // namespace
