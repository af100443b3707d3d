#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "chaubox/dist.hpp"
#include "chaubox/error.hpp"
#include "chaubox/sample.hpp"

namespace chaubox {

/// Fence families. Each alternative carries its own parameters.
namespace method {

/// Constant coefficient; k = 1.5 gives the inner fences, k = 3 the outer.
struct Tukey {
  double k = 1.5;
};

/// k_n = Phi^{-1}(1 - 0.25/n) / 1.35 - 0.5.
struct ChauvenetType {};

/// Exact some-outside-rate fences (closed-form fit, alpha = 0.05 only).
struct ExactRate {
  double alpha = 0.05;
};

/// Tolerance-limit fences (closed-form fit, alpha = 0.05 and gamma = 0.9 only).
struct ToleranceLimit {
  double alpha = 0.05;
  double gamma = 0.9;
};

struct Asymptotic {
  double alpha = 0.05;
};

struct Empirical {};

/// Mean +/- c_n * sd with c_n = Phi^{-1}(1 - 0.25/n).
struct ChauvenetInterval {};

/// Asymmetric fences from a fitted (or supplied) distribution's quantiles.
/// When `model` is empty the family is fitted to the sample by the method of
/// moments.
struct ChauvenetNonNormal {
  Family family = Family::normal;
  std::optional<DistributionModel> model;
};

}  // namespace method

using FenceMethod =
    std::variant<method::Tukey, method::ChauvenetType, method::ExactRate, method::ToleranceLimit,
                 method::Asymptotic, method::Empirical, method::ChauvenetInterval,
                 method::ChauvenetNonNormal>;

inline std::string method_name(const FenceMethod& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using M = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<M, method::Tukey>) return "tukey";
        else if constexpr (std::is_same_v<M, method::ChauvenetType>) return "chauvenet_type";
        else if constexpr (std::is_same_v<M, method::ExactRate>) return "exact_rate";
        else if constexpr (std::is_same_v<M, method::ToleranceLimit>) return "tolerance_limit";
        else if constexpr (std::is_same_v<M, method::Asymptotic>) return "asymptotic";
        else if constexpr (std::is_same_v<M, method::Empirical>) return "empirical";
        else if constexpr (std::is_same_v<M, method::ChauvenetInterval>) return "chauvenet_interval";
        else return "chauvenet_type_non_normal";
      },
      m);
}

struct FencePair {
  double lower = 0.0;
  double upper = 0.0;
  double coefficient_lower = 0.0;
  double coefficient_upper = 0.0;
  FenceMethod method;
  /// Model whose quantiles produced the coefficients (non-normal method only).
  std::optional<DistributionModel> model;
  std::vector<std::string> notes;
};

// Coefficients ----------------------------------------------------------------

/// c_n = Phi^{-1}(1 - 0.25/n), Chauvenet's threshold in standard deviations.
inline double chauvenet_threshold(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::domain_error, "Chauvenet threshold needs n >= 2");
  }
  return special::normal_quantile_upper(0.25 / static_cast<double>(n));
}

/// The 1.35 and 0.5 constants are the rounded normal IQR/sd ratio and its half
/// (0.675 / 1.35); they are kept as published.
inline double chauvenet_coefficient(std::size_t n) {
  return chauvenet_threshold(n) / 1.35 - 0.5;
}

/// True when n = 4m + 1 with m in {2, ..., 124}.
inline bool in_fitted_domain(std::size_t n) {
  if (n < 9 || n > 497) return false;
  return (n - 1) % 4 == 0;
}

namespace detail {

inline double exp_quartic_in_log(std::size_t n, const double (&c)[5]) {
  const double l = std::log(static_cast<double>(n));
  return std::exp(c[0] + l * (c[1] + l * (c[2] + l * (c[3] + l * c[4]))));
}

inline void require_fitted_domain(std::size_t n, const char* what) {
  if (!in_fitted_domain(n)) {
    throw Error(ErrorCode::outside_validity_domain,
                std::string(what) + " approximation is only valid for n = 4m + 1, m = 2..124; got n = " +
                    std::to_string(n));
  }
}

}  // namespace detail

/// Exact some-outside-rate coefficient, alpha = 0.05.
inline double er_coefficient(std::size_t n) {
  detail::require_fitted_domain(n, "ER");
  static constexpr double c[5] = {4.01761, -2.35363, 0.64618, -0.07893, 0.00368};
  return detail::exp_quartic_in_log(n, c);
}

/// Tolerance-limit coefficient, alpha = 0.05 and gamma = 0.9.
inline double tl_coefficient(std::size_t n) {
  detail::require_fitted_domain(n, "TL");
  static constexpr double c[5] = {4.45171, -2.44501, 0.64990, -0.07851, 0.00365};
  return detail::exp_quartic_in_log(n, c);
}

/// Smoothing factor for the asymptotic fences; identically 1 from n = 2000 on.
inline double af_adjustment(std::size_t n) {
  if (n >= 2000) return 1.0;
  const double r = 1.0 / static_cast<double>(n);
  return 1.0 + r * (8.9764 + r * (-126.6262 + r * (1531.7064 + r * -10729.3439)));
}

inline double af_coefficient(std::size_t n, double alpha = 0.05) {
  if (n < 2) throw Error(ErrorCode::domain_error, "AF coefficient needs n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::domain_error, "AF coefficient needs 0 < alpha < 1");
  }
  // Phi^{-1}((1 - alpha/2)^{1/n}) taken through its upper tail 1 - (1 - alpha/2)^{1/n}.
  const double tail = -std::expm1(std::log1p(-alpha / 2.0) / static_cast<double>(n));
  return af_adjustment(n) * (special::normal_quantile_upper(tail) - 0.6745) / 1.349;
}

inline double ec_coefficient(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::domain_error, "EC coefficient needs n >= 1");
  return 1.5 * (1.0 + 0.1 * std::log(static_cast<double>(n) / 10.0));
}

struct AsymmetricCoefficients {
  double lower = 0.0;
  double upper = 0.0;
};

/// Quantile-ratio coefficients for a distribution F:
///   lower = [F^{-1}(0.25) - F^{-1}(0.25/n)] / [F^{-1}(0.75) - F^{-1}(0.25)]
///   upper = [F^{-1}(1 - 0.25/n) - F^{-1}(0.75)] / [F^{-1}(0.75) - F^{-1}(0.25)]
inline AsymmetricCoefficients non_normal_coefficients(const DistributionModel& model, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::domain_error, "non-normal coefficients need n >= 2");
  const double tail = 0.25 / static_cast<double>(n);
  const double lo_tail = quantile_of(model, tail);
  const double q1 = quantile_of(model, 0.25);
  const double q3 = quantile_of(model, 0.75);
  const double hi_tail = upper_quantile_of(model, tail);
  const double spread = q3 - q1;
  return {(q1 - lo_tail) / spread, (hi_tail - q3) / spread};
}

// Fences ----------------------------------------------------------------------

inline FencePair chauvenet_interval(const Sample& sample) {
  if (sample.size() < 2 || !(sample.sd() > 0.0)) {
    throw Error(ErrorCode::degenerate_variance, "Chauvenet interval needs n >= 2 and sd > 0");
  }
  const double c = chauvenet_threshold(sample.size());
  FencePair out;
  out.lower = sample.mean() - c * sample.sd();
  out.upper = sample.mean() + c * sample.sd();
  out.coefficient_lower = c;
  out.coefficient_upper = c;
  out.method = method::ChauvenetInterval{};
  return out;
}

namespace detail {

inline FencePair quartile_pair(double q1, double q3, double k_lower, double k_upper, FenceMethod m) {
  const double iqr = q3 - q1;
  FencePair out;
  out.lower = q1 - k_lower * iqr;
  out.upper = q3 + k_upper * iqr;
  out.coefficient_lower = k_lower;
  out.coefficient_upper = k_upper;
  out.method = std::move(m);
  return out;
}

}  // namespace detail

/// Fences for a quartile-based method from given quartiles and sample size.
/// A non-normal method must carry an explicit model here, since there is no
/// sample to fit.
inline FencePair fences_from_quartiles(double q1, double q3, std::size_t n, const FenceMethod& m) {
  if (!(q3 - q1 > 0.0)) {
    throw Error(ErrorCode::degenerate_iqr, "interquartile range is zero");
  }
  return std::visit(
      [&](const auto& v) -> FencePair {
        using M = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<M, method::Tukey>) {
          if (!(v.k > 0.0) || !std::isfinite(v.k)) {
            throw Error(ErrorCode::invalid_parameters, "Tukey coefficient k must be positive");
          }
          return detail::quartile_pair(q1, q3, v.k, v.k, m);
        } else if constexpr (std::is_same_v<M, method::ChauvenetType>) {
          const double k = chauvenet_coefficient(n);
          return detail::quartile_pair(q1, q3, k, k, m);
        } else if constexpr (std::is_same_v<M, method::ExactRate>) {
          if (v.alpha != 0.05) {
            throw Error(ErrorCode::invalid_parameters, "ER fences are only available for alpha = 0.05");
          }
          const double k = er_coefficient(n);
          return detail::quartile_pair(q1, q3, k, k, m);
        } else if constexpr (std::is_same_v<M, method::ToleranceLimit>) {
          if (v.alpha != 0.05 || v.gamma != 0.9) {
            throw Error(ErrorCode::invalid_parameters,
                        "TL fences are only available for alpha = 0.05, gamma = 0.9");
          }
          const double k = tl_coefficient(n);
          return detail::quartile_pair(q1, q3, k, k, m);
        } else if constexpr (std::is_same_v<M, method::Asymptotic>) {
          const double k = af_coefficient(n, v.alpha);
          return detail::quartile_pair(q1, q3, k, k, m);
        } else if constexpr (std::is_same_v<M, method::Empirical>) {
          const double k = ec_coefficient(n);
          return detail::quartile_pair(q1, q3, k, k, m);
        } else if constexpr (std::is_same_v<M, method::ChauvenetInterval>) {
          throw Error(ErrorCode::invalid_parameters,
                      "the Chauvenet interval is built from mean and sd, not quartiles");
        } else {
          if (!v.model) {
            throw Error(ErrorCode::invalid_parameters, "non-normal fences need a model when no sample is given");
          }
          const auto k = non_normal_coefficients(*v.model, n);
          FencePair out = detail::quartile_pair(q1, q3, k.lower, k.upper, m);
          out.model = v.model;
          return out;
        }
      },
      m);
}

inline FencePair compute_fences(const Sample& sample, const FenceMethod& m) {
  if (std::holds_alternative<method::ChauvenetInterval>(m)) {
    return chauvenet_interval(sample);
  }
  if (sample.size() < 4) {
    throw Error(ErrorCode::degenerate_iqr,
                "quartile-based fences need n >= 4, got n = " + std::to_string(sample.size()));
  }
  if (!(sample.iqr() > 0.0)) {
    throw Error(ErrorCode::degenerate_iqr, "interquartile range is zero");
  }

  const auto* nn = std::get_if<method::ChauvenetNonNormal>(&m);
  if (nn == nullptr || nn->model) {
    return fences_from_quartiles(sample.q1(), sample.q3(), sample.size(), m);
  }

  std::vector<std::string> notes;
  DistributionModel model = NormalModel{};
  try {
    model = fit_model(nn->family, sample);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::variance_at_most_one) throw;
    model = fit_normal(sample);
    notes.push_back("t moment fit infeasible (sample variance <= 1); fell back to " + describe(model));
  }
  FenceMethod fitted = method::ChauvenetNonNormal{nn->family, model};
  FencePair out = fences_from_quartiles(sample.q1(), sample.q3(), sample.size(), fitted);
  out.method = m;
  out.notes = std::move(notes);
  return out;
}

}  // namespace chaubox
