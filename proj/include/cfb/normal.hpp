#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cfb/errors.hpp"

namespace cfb {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace detail {

struct SimpsonPanel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Recursive adaptive Simpson with the usual Richardson correction.
template <class F>
double adaptive_simpson(const F& f, const SimpsonPanel& p, double eps, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * eps, depth - 1);
}

}  // namespace detail

/// Integrates f over [a, b] with `panels` equal initial panels, each refined
/// adaptively to absolute tolerance `eps_per_panel`.
template <class F>
double integrate_adaptive(const F& f, double a, double b, int panels = 16,
                          double eps_per_panel = 1e-10, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const detail::SimpsonPanel p{lo, mid, hi, flo, fmid, fhi, detail::simpson(lo, hi, flo, fmid, fhi)};
    total += detail::adaptive_simpson(f, p, eps_per_panel, max_depth);
  }
  return total;
}

/// Pr(Z1 <= h, Z2 <= k) for a standard bivariate normal with correlation r.
///
/// Computed as the integral over z <= h of phi(z) Phi((k - r z) / sqrt(1 - r^2)).
/// The integrand steps at z = k / r when |r| is close to 1, so the range is
/// split there. r = +-1 uses the univariate limits.
inline double bivariate_normal_cdf(double h, double k, double r) {
  if (!(r >= -1.0 && r <= 1.0)) throw InvalidArgument("correlation must lie in [-1,1]");
  if (std::isnan(h) || std::isnan(k)) throw InvalidArgument("bivariate normal bound is NaN");
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (h == -inf || k == -inf) return 0.0;
  if (h == inf) return normal_cdf(k);
  if (k == inf) return normal_cdf(h);
  if (r == 1.0) return normal_cdf(std::min(h, k));
  if (r == -1.0) return std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);

  // Standard normal mass beyond |z| = 12 is below 2e-33.
  constexpr double cut = 12.0;
  const double lo = -cut;
  const double hi = std::min(h, cut);
  if (!(hi > lo)) return 0.0;

  const double s = std::sqrt((1.0 - r) * (1.0 + r));
  auto integrand = [=](double z) { return normal_pdf(z) * normal_cdf((k - r * z) / s); };

  double total = 0.0;
  if (r != 0.0) {
    const double step = k / r;
    if (step > lo && step < hi) {
      total += integrate_adaptive(integrand, lo, step);
      total += integrate_adaptive(integrand, step, hi);
      return std::clamp(total, 0.0, 1.0);
    }
  }
  total = integrate_adaptive(integrand, lo, hi);
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace cfb
