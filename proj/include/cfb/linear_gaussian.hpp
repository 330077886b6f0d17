#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "cfb/concordance.hpp"
#include "cfb/errors.hpp"
#include "cfb/monte_carlo.hpp"
#include "cfb/normal.hpp"
#include "cfb/population.hpp"
#include "cfb/rng.hpp"

namespace cfb {

/// Covariance of (H2* - H1*, B2 - B1) for two independent units. The mean is 0.
inline std::array<std::array<double, 2>, 2> pair_difference_covariance(
    const LinearGaussianPopulation& pop) {
  pop.validate();
  const double v = 2.0 * pop.betaxt * pop.betaxt;
  return {{{v, v}, {v, v + 4.0 * (1.0 - pop.rho) * pop.sigma * pop.sigma}}};
}

/// Correlation of the pair differences; H* and B always co-vary positively.
inline double pair_difference_correlation(const LinearGaussianPopulation& pop) {
  if (pop.betaxt == 0.0) {
    throw DegenerateCfb("betaxt = 0: predicted benefit is constant and the covariance is singular");
  }
  const auto s = pair_difference_covariance(pop);
  return std::min(1.0, s[0][1] / std::sqrt(s[0][0] * s[1][1]));
}

/// cfb* = 2 F((0,0); 0, Sigma), evaluated with the bivariate normal CDF.
inline CfbResult cfb_linear_gaussian(const LinearGaussianPopulation& pop) {
  const double r = pair_difference_correlation(pop);
  const double value = 2.0 * bivariate_normal_cdf(0.0, 0.0, r);
  return {value, value, 1.0};
}

/// Same quantity through the orthant identity 0.5 + arcsin(r) / pi.
inline double cfb_linear_gaussian_arcsine(const LinearGaussianPopulation& pop) {
  const double r = pair_difference_correlation(pop);
  return 0.5 + std::asin(r) / std::numbers::pi;
}

/// Samples counterfactuals and scores B = Y(1) - Y(0) against
/// h*(X) = betat + betaxt X.
class LinearGaussianSampler {
 public:
  explicit LinearGaussianSampler(LinearGaussianPopulation pop) : pop_(pop) { pop_.validate(); }

  BenefitDraw operator()(Engine& eng) const {
    std::normal_distribution<double> z;
    const double x = z(eng);
    const double z0 = z(eng);
    const double z1 = z(eng);
    const double e0 = pop_.sigma * z0;
    const double e1 = pop_.sigma * (pop_.rho * z0 + std::sqrt(1.0 - pop_.rho * pop_.rho) * z1);
    const double y0 = pop_.beta0 + pop_.betax * x + e0;
    const double y1 = pop_.beta0 + pop_.betat + (pop_.betax + pop_.betaxt) * x + e1;
    return {y1 - y0, pop_.betat + pop_.betaxt * x};
  }

 private:
  LinearGaussianPopulation pop_;
};

}  // namespace cfb
