#pragma once

#include <array>
#include <cmath>
#include <string>

#include "cfb/distribution.hpp"
#include "cfb/errors.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// Order relation between the first and second member of an ordered pair.
enum class Rel : int { Eq = 0, Gt = 1, Lt = 2 };

/// cfb value together with the masses it was formed from. Both masses are
/// taken over ordered pairs with B1 != B2: numerator counts concordant pairs
/// plus half the H-tied ones, denominator is Pr(B1 != B2).
struct CfbResult {
  double value;
  double numerator;
  double denominator;
};

/// Joint probabilities of (H-relation, B-relation) for an ordered pair of
/// independent draws.
class PairTable {
 public:
  using Cells = std::array<std::array<double, 3>, 3>;

  PairTable() : cells_{} {}

  explicit PairTable(const Cells& cells) : cells_(cells) {
    double total = 0.0;
    for (const auto& row : cells_) {
      for (double v : row) {
        if (!(v >= 0.0)) throw InvalidArgument("pair table entries must be non-negative");
        total += v;
      }
    }
    if (std::abs(total - 1.0) > 1e-10) {
      throw InvalidArgument("pair table entries must sum to 1, got " + std::to_string(total));
    }
  }

  double operator()(Rel h, Rel b) const {
    return cells_[static_cast<int>(h)][static_cast<int>(b)];
  }
  const Cells& cells() const { return cells_; }

  double h_total(Rel h) const {
    const auto& r = cells_[static_cast<int>(h)];
    return r[0] + r[1] + r[2];
  }
  double b_total(Rel b) const {
    const int j = static_cast<int>(b);
    return cells_[0][j] + cells_[1][j] + cells_[2][j];
  }

  /// Checks the exchange symmetries an ordered pair of i.i.d. draws must have.
  bool is_symmetric(double tol = 1e-12) const {
    auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };
    const auto& t = *this;
    return near(t(Rel::Gt, Rel::Gt), t(Rel::Lt, Rel::Lt)) &&
           near(t(Rel::Gt, Rel::Lt), t(Rel::Lt, Rel::Gt)) &&
           near(t(Rel::Eq, Rel::Gt), t(Rel::Eq, Rel::Lt)) &&
           near(t(Rel::Gt, Rel::Eq), t(Rel::Lt, Rel::Eq));
  }

 private:
  friend PairTable pair_table(const MatchedBenefitDistribution&);
  Cells cells_;
};

/// Exact pair table: sums over ordered pairs of prediction levels.
inline PairTable pair_table(const MatchedBenefitDistribution& dist) {
  PairTable t;
  const auto& rows = dist.rows();
  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      const double w = r1.weight * r2.weight;
      const int hi = r1.h == r2.h ? 0 : (r1.h > r2.h ? 1 : 2);
      auto& row = t.cells_[hi];
      row[0] += w * prob_equal(r1.triple, r2.triple);
      row[1] += w * prob_greater(r1.triple, r2.triple);
      row[2] += w * prob_greater(r2.triple, r1.triple);
    }
  }
  return t;
}

/// cfb = Pr(H1 > H2 | B1 > B2) + 0.5 Pr(H1 = H2 | B1 > B2).
inline CfbResult cfb_from_pair_table(const PairTable& t) {
  const double conc = t(Rel::Gt, Rel::Gt);
  const double disc = t(Rel::Lt, Rel::Gt);
  const double tied = t(Rel::Eq, Rel::Gt);
  const double greater = conc + disc + tied;
  if (!(greater > 0.0)) throw UndefinedCfb();
  const double num = conc + 0.5 * tied;
  return {num / greater, 2.0 * num, 2.0 * greater};
}

inline CfbResult cfb(const MatchedBenefitDistribution& dist) {
  return cfb_from_pair_table(pair_table(dist));
}

/// Closed form for two prediction levels h1 < h2 with Pr(H = h2) = c,
/// B | H=h1 ~ p and B | H=h2 ~ q. Written term by term as in the
/// two-group expansion; the caller is responsible for the level ordering.
inline CfbResult cfb_two_group(double c, const ProbTriple& p, const ProbTriple& q) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0,1)");
  const double pm = p.minus(), p0 = p.zero(), pp = p.plus();
  const double qm = q.minus(), q0 = q.zero(), qp = q.plus();
  const double cross = c * (1.0 - c);
  const double q_over_p = qp * p0 + qp * pm + q0 * pm;
  const double p_over_q = pp * q0 + pp * qm + p0 * qm;
  const double within_q = qp * q0 + qp * qm + q0 * qm;
  const double within_p = pp * p0 + pp * pm + p0 * pm;

  const double a = cross * (p_over_q + q_over_p) + c * c * within_q + (1.0 - c) * (1.0 - c) * within_p;
  if (!(a > 0.0)) throw UndefinedCfb();
  const double num = cross * q_over_p + 0.5 * c * c * within_q + 0.5 * (1.0 - c) * (1.0 - c) * within_p;
  return {num / a, 2.0 * num, 2.0 * a};
}

}  // namespace cfb
