#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cfb/errors.hpp"

namespace cfb {

/// Fixed-width histogram on [lo, hi]. Values outside the range are counted
/// in the nearest edge bin so the counts always sum to the number of values.
class Histogram {
 public:
  Histogram(double lo, double hi, std::size_t bins) : lo_(lo), hi_(hi), counts_(bins, 0) {
    if (!(hi > lo) || bins == 0) throw InvalidArgument("histogram needs hi > lo and bins > 0");
  }

  void add(double v) { ++counts_[bin_of(v)]; }

  std::size_t bin_of(double v) const {
    const double pos = (v - lo_) / (hi_ - lo_) * static_cast<double>(counts_.size());
    if (!(pos > 0.0)) return 0;
    return std::min(counts_.size() - 1, static_cast<std::size_t>(pos));
  }

  double bin_left(std::size_t i) const { return lo_ + (hi_ - lo_) * static_cast<double>(i) / counts_.size(); }
  double bin_right(std::size_t i) const { return lo_ + (hi_ - lo_) * static_cast<double>(i + 1) / counts_.size(); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t bins() const { return counts_.size(); }
  const std::vector<std::size_t>& counts() const { return counts_; }

  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts_) t += c;
    return t;
  }

 private:
  double lo_;
  double hi_;
  std::vector<std::size_t> counts_;
};

/// Median of a copy of the values (mean of the two middle values for even n).
inline double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty set");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace cfb
