#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chaubox/error.hpp"

namespace chaubox {

/// Linear-interpolation quantile of an ascending range at rank h = (n-1)p + 1
/// (1-based), i.e. x_(floor h) + frac(h) * (x_(ceil h) - x_(floor h)).
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw Error(ErrorCode::empty_input, "quantile of an empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::domain_error,
                "quantile probability must lie in [0, 1], got " + std::to_string(p));
  }
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  const double frac = h - static_cast<double>(lo);
  if (lo == hi || frac == 0.0) {
    return sorted[lo];
  }
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// Immutable univariate sample: ascending values plus the original input order,
/// with moments and quartiles computed once at construction.
class Sample {
 public:
  explicit Sample(std::span<const double> raw) : original_(raw.begin(), raw.end()) {
    if (original_.empty()) {
      throw Error(ErrorCode::empty_input, "sample must contain at least one value");
    }
    for (std::size_t i = 0; i < original_.size(); ++i) {
      if (!std::isfinite(original_[i])) {
        throw Error(ErrorCode::non_finite_value,
                    "non-finite value at index " + std::to_string(i), i);
      }
    }
    sorted_ = original_;
    std::stable_sort(sorted_.begin(), sorted_.end());

    // Moments are accumulated over the sorted copy so that every permutation of
    // the same multiset yields bit-identical statistics.
    const double n = static_cast<double>(sorted_.size());
    double sum = 0.0;
    for (double x : sorted_) sum += x;
    double mean = sum / n;
    double correction = 0.0;
    for (double x : sorted_) correction += x - mean;
    mean += correction / n;

    double ss = 0.0;
    for (double x : sorted_) ss += (x - mean) * (x - mean);

    mean_ = mean;
    sum_sq_dev_ = ss;
    sd_ = sorted_.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    q1_ = quantile_sorted(sorted_, 0.25);
    median_ = quantile_sorted(sorted_, 0.5);
    q3_ = quantile_sorted(sorted_, 0.75);
  }

  explicit Sample(const std::vector<double>& raw) : Sample(std::span<const double>(raw)) {}

  std::span<const double> values() const noexcept { return sorted_; }
  std::span<const double> original() const noexcept { return original_; }
  std::size_t size() const noexcept { return sorted_.size(); }

  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }
  double variance() const noexcept { return sd_ * sd_; }
  /// Sum of squared deviations from the mean (no divisor).
  double sum_sq_dev() const noexcept { return sum_sq_dev_; }
  double q1() const noexcept { return q1_; }
  double median() const noexcept { return median_; }
  double q3() const noexcept { return q3_; }
  double iqr() const noexcept { return q3_ - q1_; }
  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }

  double quantile(double p) const { return quantile_sorted(sorted_, p); }

 private:
  std::vector<double> original_;
  std::vector<double> sorted_;
  double mean_ = 0.0;
  double sd_ = 0.0;
  double sum_sq_dev_ = 0.0;
  double q1_ = 0.0;
  double median_ = 0.0;
  double q3_ = 0.0;
};

inline Sample build_sample(std::span<const double> raw) { return Sample(raw); }

inline double quantile(const Sample& sample, double p) { return sample.quantile(p); }

}  // namespace chaubox
