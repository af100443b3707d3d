#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaubox {

enum class ErrorCode {
  empty_input,
  non_finite_value,
  domain_error,
  invalid_parameters,
  convergence_failure,
  non_positive_data,
  degenerate_variance,
  non_positive_mean,
  variance_at_most_one,
  outside_validity_domain,
  degenerate_iqr,
  inverted_fences,
  inconsistent_outer,
  invalid_config,
  empty_spec,
  inconsistent_panel,
  parse_error,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::non_finite_value: return "non_finite_value";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::invalid_parameters: return "invalid_parameters";
    case ErrorCode::convergence_failure: return "convergence_failure";
    case ErrorCode::non_positive_data: return "non_positive_data";
    case ErrorCode::degenerate_variance: return "degenerate_variance";
    case ErrorCode::non_positive_mean: return "non_positive_mean";
    case ErrorCode::variance_at_most_one: return "variance_at_most_one";
    case ErrorCode::outside_validity_domain: return "outside_validity_domain";
    case ErrorCode::degenerate_iqr: return "degenerate_iqr";
    case ErrorCode::inverted_fences: return "inverted_fences";
    case ErrorCode::inconsistent_outer: return "inconsistent_outer";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::empty_spec: return "empty_spec";
    case ErrorCode::inconsistent_panel: return "inconsistent_panel";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

/// Every failure in the library is reported as an Error. `index` carries the
/// offending input position (NonFiniteValue) or line number (ParseError).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace chaubox
