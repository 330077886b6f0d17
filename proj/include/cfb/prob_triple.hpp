#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "cfb/errors.hpp"

namespace cfb {

/// Tolerance used when validating probabilities and triple sums.
inline constexpr double kProbTolerance = 1e-12;

/// Benefit level B = Y(1) - Y(0).
enum class Benefit : int { Harm = -1, None = 0, Gain = 1 };

/// Distribution of the ternary benefit B at one covariate level, stored as
/// (Pr(B=-1), Pr(B=0), Pr(B=+1)). Validated on construction; never clamped.
class ProbTriple {
 public:
  ProbTriple(double p_minus, double p_zero, double p_plus)
      : v_{p_minus, p_zero, p_plus} {
    for (double x : v_) {
      if (!(x >= -kProbTolerance && x <= 1.0 + kProbTolerance)) {
        throw InvalidArgument("probability triple component out of [0,1]: " + str());
      }
    }
    if (std::abs(v_[0] + v_[1] + v_[2] - 1.0) > kProbTolerance) {
      throw InvalidArgument("probability triple does not sum to 1: " + str());
    }
  }

  double minus() const { return v_[0]; }
  double zero() const { return v_[1]; }
  double plus() const { return v_[2]; }

  /// Probability indexed by level order 0 -> B=-1, 1 -> B=0, 2 -> B=+1.
  double operator[](std::size_t level) const { return v_[level]; }
  double at(Benefit b) const { return v_[static_cast<int>(b) + 1]; }

  const std::array<double, 3>& values() const { return v_; }

  /// E[B] for this level, i.e. the best prediction h*(x).
  double mean() const { return v_[2] - v_[0]; }

  std::string str() const {
    std::ostringstream os;
    os.precision(10);
    os << '(' << v_[0] << ',' << v_[1] << ',' << v_[2] << ')';
    return os.str();
  }

  friend bool operator==(const ProbTriple&, const ProbTriple&) = default;

 private:
  std::array<double, 3> v_;
};

/// Pr(B1 > B2) for independent B1 ~ a, B2 ~ b.
inline double prob_greater(const ProbTriple& a, const ProbTriple& b) {
  return a.plus() * (b.zero() + b.minus()) + a.zero() * b.minus();
}

/// Pr(B1 = B2) for independent B1 ~ a, B2 ~ b.
inline double prob_equal(const ProbTriple& a, const ProbTriple& b) {
  return a.minus() * b.minus() + a.zero() * b.zero() + a.plus() * b.plus();
}

}  // namespace cfb
