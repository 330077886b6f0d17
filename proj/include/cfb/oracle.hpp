#pragma once

#include <span>
#include <vector>

#include "cfb/concordance.hpp"
#include "cfb/distribution.hpp"

namespace cfb {

/// One atom of a finite joint distribution of (B, H).
struct JointAtom {
  int b;
  double h;
  double weight;
};

inline std::vector<JointAtom> joint_atoms(const MatchedBenefitDistribution& dist) {
  std::vector<JointAtom> atoms;
  for (const auto& r : dist.rows()) {
    for (int b = -1; b <= 1; ++b) {
      atoms.push_back({b, r.h, r.weight * r.triple[static_cast<std::size_t>(b + 1)]});
    }
  }
  return atoms;
}

/// Brute-force cfb: scores every ordered pair of atoms directly from the
/// definition (concordant 1, H-tied 0.5, discordant 0; B-tied pairs skipped).
inline CfbResult empirical_cfb_oracle(std::span<const JointAtom> atoms) {
  double scored = 0.0;
  double eligible = 0.0;
  for (const auto& u : atoms) {
    for (const auto& v : atoms) {
      if (u.b == v.b) continue;
      const double w = u.weight * v.weight;
      eligible += w;
      const double s = (u.b - v.b) * (u.h - v.h);
      if (s > 0) {
        scored += w;
      } else if (u.h == v.h) {
        scored += 0.5 * w;
      }
    }
  }
  if (!(eligible > 0.0)) throw UndefinedCfb();
  return {scored / eligible, scored, eligible};
}

inline CfbResult empirical_cfb_oracle(const MatchedBenefitDistribution& dist) {
  const auto atoms = joint_atoms(dist);
  return empirical_cfb_oracle(std::span<const JointAtom>(atoms));
}

}  // namespace cfb
