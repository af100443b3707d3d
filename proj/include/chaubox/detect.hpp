#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaubox/error.hpp"
#include "chaubox/fences.hpp"
#include "chaubox/sample.hpp"

namespace chaubox {

enum class Label { inlier, outside, far_out };

constexpr std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::inlier: return "inlier";
    case Label::outside: return "outside";
    case Label::far_out: return "far_out";
  }
  return "unknown";
}

struct DetectionReport {
  /// Input-order values and their labels.
  std::vector<double> values;
  std::vector<Label> labels;
  FencePair fence;
  std::optional<FencePair> outer;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::size_t n_flagged = 0;
  /// Ground-truth contamination by input index, when known.
  std::optional<std::vector<bool>> contamination;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return labels.size(); }

  std::size_t count(Label label) const noexcept {
    std::size_t c = 0;
    for (Label l : labels) c += (l == label);
    return c;
  }

  std::vector<std::size_t> flagged_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != Label::inlier) out.push_back(i);
    }
    return out;
  }
};

/// Labels each observation against closed inner fences [LF, UF] and, when
/// given, outer fences; whiskers reach the most extreme inliers.
inline DetectionReport classify(const Sample& sample, const FencePair& inner,
                                const std::optional<FencePair>& outer = std::nullopt,
                                std::optional<std::vector<bool>> contamination = std::nullopt) {
  if (!(inner.lower < inner.upper)) {
    throw Error(ErrorCode::inverted_fences, "inner fences must satisfy lower < upper");
  }
  if (outer && !(outer->lower <= inner.lower && outer->upper >= inner.upper)) {
    throw Error(ErrorCode::inconsistent_outer, "outer fences must enclose the inner fences");
  }
  if (contamination && contamination->size() != sample.size()) {
    throw Error(ErrorCode::invalid_parameters, "contamination flags must match the sample size");
  }

  DetectionReport report;
  const auto original = sample.original();
  report.values.assign(original.begin(), original.end());
  report.labels.resize(original.size(), Label::inlier);
  report.fence = inner;
  report.outer = outer;
  report.contamination = std::move(contamination);

  for (std::size_t i = 0; i < original.size(); ++i) {
    const double x = original[i];
    if (x >= inner.lower && x <= inner.upper) continue;
    const bool beyond_outer = outer && (x < outer->lower || x > outer->upper);
    report.labels[i] = beyond_outer ? Label::far_out : Label::outside;
    ++report.n_flagged;
  }

  const auto sorted = sample.values();
  bool any_inside = false;
  for (double x : sorted) {
    if (x >= inner.lower && x <= inner.upper) {
      if (!any_inside) report.whisker_low = x;
      report.whisker_high = x;
      any_inside = true;
    }
  }
  if (!any_inside) {
    report.whisker_low = sample.q1();
    report.whisker_high = sample.q3();
    report.warnings.push_back("no observation lies inside the fences; whiskers collapsed to the quartiles");
  }
  return report;
}

/// compute_fences followed by classify.
inline DetectionReport detect(const Sample& sample, const FenceMethod& m,
                              std::optional<FenceMethod> outer_method = std::nullopt) {
  FencePair inner = compute_fences(sample, m);
  std::optional<FencePair> outer;
  if (outer_method) outer = compute_fences(sample, *outer_method);
  return classify(sample, inner, outer);
}

}  // namespace chaubox
