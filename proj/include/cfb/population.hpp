#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cfb/errors.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// Covariate levels are small exact integers.
using Level = int;

inline double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterUnbounded("logit of boundary probability " + std::to_string(p));
  }
  return std::log(p) - std::log1p(-p);
}

/// One covariate level of a discrete population: its mass and Pr(B | X=x).
struct LevelAtom {
  Level x;
  double mass;
  ProbTriple triple;
};

/// Binary covariate with Pr(X=1) = c and one benefit triple per level.
class BinaryXPopulation {
 public:
  BinaryXPopulation(double c, ProbTriple triple0, ProbTriple triple1)
      : c_(c), t0_(triple0), t1_(triple1) {
    if (!(c > 0.0 && c < 1.0)) {
      throw InvalidArgument("Pr(X=1) must lie in (0,1), got " + std::to_string(c));
    }
  }

  double c() const { return c_; }
  const ProbTriple& triple0() const { return t0_; }
  const ProbTriple& triple1() const { return t1_; }

  std::vector<LevelAtom> levels() const { return {{0, 1.0 - c_, t0_}, {1, c_, t1_}}; }

 private:
  double c_;
  ProbTriple t0_;
  ProbTriple t1_;
};

/// X ~ Beta(alpha, beta) with Pr(B | X=x) linearly interpolated between two
/// endpoint triples. Every interpolated triple is valid by convexity.
class BetaXPopulation {
 public:
  BetaXPopulation(double alpha, double beta, ProbTriple triple0, ProbTriple triple1)
      : alpha_(alpha), beta_(beta), t0_(triple0), t1_(triple1) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
      throw InvalidArgument("Beta shape parameters must be positive");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const ProbTriple& triple0() const { return t0_; }
  const ProbTriple& triple1() const { return t1_; }

 private:
  double alpha_;
  double beta_;
  ProbTriple t0_;
  ProbTriple t1_;
};

/// logit Pr(Y=1 | T=t, X=x) = beta0 + betax*x + betat*t + betaxt*t*x.
struct LogisticModel {
  double beta0 = 0.0;
  double betax = 0.0;
  double betat = 0.0;
  double betaxt = 0.0;

  double linear_predictor(int t, Level x) const {
    return beta0 + betax * x + betat * t + betaxt * t * x;
  }
  double prob(int t, Level x) const { return logistic(linear_predictor(t, x)); }

  friend bool operator==(const LogisticModel&, const LogisticModel&) = default;
};

/// RCT source population: ternary X with Pr(X=0)=a, Pr(X=1)=b,
/// Pr(X=2)=1-a-b, and a logistic outcome model. Zero-mass levels are allowed
/// here; the matching operations reject them where it matters.
class LogisticRctPopulation {
 public:
  LogisticRctPopulation(double a, double b, LogisticModel model) : a_(a), b_(b), model_(model) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(a + b <= 1.0 + kProbTolerance)) {
      throw InvalidArgument("covariate masses must satisfy a>=0, b>=0, a+b<=1");
    }
    for (int t = 0; t <= 1; ++t) {
      for (Level x = 0; x <= 2; ++x) {
        const double p = model_.prob(t, x);
        if (!(p > 0.0 && p < 1.0)) {
          throw InvalidArgument("outcome probability saturates at t=" + std::to_string(t) +
                                ", x=" + std::to_string(x));
        }
      }
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  const LogisticModel& model() const { return model_; }

  double mass(Level x) const {
    switch (x) {
      case 0: return a_;
      case 1: return b_;
      case 2: return std::max(0.0, 1.0 - a_ - b_);
      default: throw InvalidArgument("covariate level must be 0, 1 or 2");
    }
  }

 private:
  double a_;
  double b_;
  LogisticModel model_;
};

/// Continuous counterfactuals with X ~ N(0,1):
///   Y(0) = beta0 + betax X + e0,  Y(1) = beta0 + betat + (betax + betaxt) X + e1,
/// where (e0, e1) are bivariate normal, variance sigma^2, correlation rho.
struct LinearGaussianPopulation {
  double beta0 = 0.0;
  double betax = 0.0;
  double betat = 0.0;
  double betaxt = 1.0;
  double sigma = 1.0;
  double rho = 0.0;

  void validate() const {
    if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    if (!(rho >= -1.0 && rho <= 1.0)) throw InvalidArgument("rho must lie in [-1,1]");
  }
};

/// A prediction h(x) for each discrete covariate level.
class BenefitPredictor {
 public:
  BenefitPredictor() = default;
  explicit BenefitPredictor(std::map<Level, double> table) : table_(std::move(table)) {}

  double operator()(Level x) const {
    auto it = table_.find(x);
    if (it == table_.end()) {
      throw InvalidArgument("predictor undefined at covariate level " + std::to_string(x));
    }
    return it->second;
  }

  void set(Level x, double h) { table_[x] = h; }
  const std::map<Level, double>& table() const { return table_; }

 private:
  std::map<Level, double> table_;
};

/// h*(x) = E[B | X=x] for a binary covariate.
inline BenefitPredictor best_predictor(const BinaryXPopulation& pop) {
  return BenefitPredictor({{0, pop.triple0().mean()}, {1, pop.triple1().mean()}});
}

/// Pr(B=i | X=x) = p_i + (q_i - p_i) x.
inline ProbTriple interpolate_triple(double x, const ProbTriple& triple0,
                                     const ProbTriple& triple1) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("interpolation weight must lie in [0,1]");
  }
  auto mix = [x](double p, double q) { return p + (q - p) * x; };
  return ProbTriple(mix(triple0.minus(), triple1.minus()), mix(triple0.zero(), triple1.zero()),
                    mix(triple0.plus(), triple1.plus()));
}

inline double outcome_prob(const LogisticRctPopulation& pop, int t, Level x) {
  if (t != 0 && t != 1) throw InvalidArgument("treatment must be 0 or 1");
  if (x < 0 || x > 2) throw InvalidArgument("covariate level must be 0, 1 or 2");
  return pop.model().prob(t, x);
}

/// Benefit triple implied by independent counterfactuals with
/// Pr(Y(0)=1) = y0 and Pr(Y(1)=1) = y1.
inline ProbTriple benefit_triple_from_outcome_probs(double y0, double y1) {
  if (!(y0 >= 0.0 && y0 <= 1.0) || !(y1 >= 0.0 && y1 <= 1.0)) {
    throw InvalidArgument("outcome probabilities must lie in [0,1]");
  }
  const double harm = y0 * (1.0 - y1);
  const double gain = y1 * (1.0 - y0);
  const double none = y0 * y1 + (1.0 - y0) * (1.0 - y1);
  return ProbTriple(harm, none, gain);
}

}  // namespace cfb
