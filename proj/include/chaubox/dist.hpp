#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "chaubox/error.hpp"
#include "chaubox/sample.hpp"
#include "chaubox/special.hpp"

namespace chaubox {

struct NormalModel {
  double mean = 0.0;
  double sd = 1.0;
};

/// Gamma with shape alpha and scale beta (mean alpha * beta).
struct GammaModel {
  double shape = 1.0;
  double scale = 1.0;
};

struct ChiSquareModel {
  double dof = 1.0;
};

struct StudentTModel {
  double dof = 1.0;
};

using DistributionModel = std::variant<NormalModel, GammaModel, ChiSquareModel, StudentTModel>;

enum class Family { normal, gamma, chi_square, student_t };

constexpr std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::normal: return "normal";
    case Family::gamma: return "gamma";
    case Family::chi_square: return "chi_square";
    case Family::student_t: return "student_t";
  }
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name) {
  if (name == "normal") return Family::normal;
  if (name == "gamma") return Family::gamma;
  if (name == "chi_square" || name == "chisq" || name == "chi2") return Family::chi_square;
  if (name == "student_t" || name == "t") return Family::student_t;
  return std::nullopt;
}

inline Family family_of(const DistributionModel& model) {
  return std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) return Family::normal;
        else if constexpr (std::is_same_v<M, GammaModel>) return Family::gamma;
        else if constexpr (std::is_same_v<M, ChiSquareModel>) return Family::chi_square;
        else return Family::student_t;
      },
      model);
}

inline std::string describe(const DistributionModel& model) {
  std::ostringstream out;
  out.precision(6);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) out << "normal(mean=" << m.mean << ", sd=" << m.sd << ")";
        else if constexpr (std::is_same_v<M, GammaModel>) out << "gamma(shape=" << m.shape << ", scale=" << m.scale << ")";
        else if constexpr (std::is_same_v<M, ChiSquareModel>) out << "chi_square(dof=" << m.dof << ")";
        else out << "student_t(dof=" << m.dof << ")";
      },
      model);
  return out.str();
}

namespace detail {

inline bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// Chi-square is evaluated as Gamma(dof / 2, 2) everywhere below.
inline DistributionModel canonical(const DistributionModel& model) {
  if (const auto* chi = std::get_if<ChiSquareModel>(&model)) {
    return GammaModel{chi->dof / 2.0, 2.0};
  }
  return model;
}

}  // namespace detail

inline void validate(const DistributionModel& model) {
  const bool ok = std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) return std::isfinite(m.mean) && detail::positive_finite(m.sd);
        else if constexpr (std::is_same_v<M, GammaModel>) return detail::positive_finite(m.shape) && detail::positive_finite(m.scale);
        else return detail::positive_finite(m.dof);
      },
      model);
  if (!ok) {
    throw Error(ErrorCode::invalid_parameters, "invalid parameters for " + describe(model));
  }
}

inline double pdf(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) {
          return special::normal_pdf((x - m.mean) / m.sd) / m.sd;
        } else if constexpr (std::is_same_v<M, GammaModel>) {
          if (x < 0.0) return 0.0;
          if (x == 0.0) return m.shape == 1.0 ? 1.0 / m.scale : (m.shape < 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
          const double y = x / m.scale;
          return std::exp((m.shape - 1.0) * std::log(y) - y - special::log_gamma(m.shape)) / m.scale;
        } else if constexpr (std::is_same_v<M, ChiSquareModel>) {
          return 0.0;  // unreachable: canonicalized below
        } else {
          const double v = m.dof;
          return std::exp(special::log_gamma((v + 1.0) / 2.0) - special::log_gamma(v / 2.0) -
                          0.5 * std::log(v * std::numbers::pi) -
                          (v + 1.0) / 2.0 * std::log1p(x * x / v));
        }
      },
      detail::canonical(model));
}

namespace detail {

// Upper tail of Student t for t >= 0: P(T > t) = I_{v/(v+t^2)}(v/2, 1/2) / 2.
inline double student_t_upper(double v, double t) {
  const double t2 = t * t;
  return 0.5 * special::beta_i(v / 2.0, 0.5, v / (v + t2), t2 / (v + t2));
}

}  // namespace detail

inline double cdf(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) {
          return special::normal_cdf((x - m.mean) / m.sd);
        } else if constexpr (std::is_same_v<M, GammaModel>) {
          return x <= 0.0 ? 0.0 : special::gamma_p(m.shape, x / m.scale);
        } else if constexpr (std::is_same_v<M, ChiSquareModel>) {
          return 0.0;
        } else {
          return x >= 0.0 ? 1.0 - detail::student_t_upper(m.dof, x) : detail::student_t_upper(m.dof, -x);
        }
      },
      detail::canonical(model));
}

/// Survival function 1 - cdf, evaluated directly so upper tails keep precision.
inline double sf(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) {
          return special::normal_sf((x - m.mean) / m.sd);
        } else if constexpr (std::is_same_v<M, GammaModel>) {
          return x <= 0.0 ? 1.0 : special::gamma_q(m.shape, x / m.scale);
        } else if constexpr (std::is_same_v<M, ChiSquareModel>) {
          return 0.0;
        } else {
          return x >= 0.0 ? detail::student_t_upper(m.dof, x) : 1.0 - detail::student_t_upper(m.dof, -x);
        }
      },
      detail::canonical(model));
}

namespace detail {

// Solves residual(x) = 0 for a residual that increases in x and changes sign on
// [lo, hi]. Newton steps are taken while they stay inside the bracket;
// otherwise the bracket is bisected.
template <class Residual, class Slope>
double solve_increasing(Residual residual, Slope slope, double lo, double hi, double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 2000; ++iter) {
    const double g = residual(x);
    if (g == 0.0) return x;
    if (g < 0.0) lo = x; else hi = x;

    const double d = slope(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - g / d : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

    const double scale = std::max(std::fabs(next), 1e-300);
    if (std::fabs(next - x) <= 4.0 * eps * scale || (hi - lo) <= 4.0 * eps * std::max(std::fabs(lo), std::fabs(hi))) {
      return next;
    }
    x = next;
  }
  throw Error(ErrorCode::convergence_failure, "quantile inversion did not converge");
}

// Quantile of Gamma(shape, 1). `lower` selects whether `prob` is a lower-tail
// probability (cdf target) or an upper-tail one (survival target).
inline double gamma_standard_quantile(double shape, double prob, bool lower) {
  const DistributionModel unit = GammaModel{shape, 1.0};
  // Wilson-Hilferty start; in the far lower tail P(a, x) ~ x^a / Gamma(a + 1).
  const double z = lower ? special::normal_quantile(prob) : special::normal_quantile_upper(prob);
  const double c = 1.0 / (9.0 * shape);
  double guess = shape * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
  if (lower && prob < 0.1) {
    const double power = std::exp((std::log(prob) + special::log_gamma(shape + 1.0)) / shape);
    if (!(guess > 0.0) || power < guess) guess = power;
  }
  if (!(guess > 0.0)) guess = shape;

  auto residual = [&](double x) {
    return lower ? cdf(unit, x) - prob : prob - sf(unit, x);
  };
  auto slope = [&](double x) { return pdf(unit, x); };

  double lo = 0.0;
  double hi = std::max(guess, 1e-300);
  for (int i = 0; residual(hi) < 0.0; ++i) {
    lo = hi;
    hi = hi < 1.0 ? std::max(hi * 16.0, 1e-300) : hi * 2.0;
    if (i > 4000) throw Error(ErrorCode::convergence_failure, "gamma quantile bracket search failed");
  }
  return solve_increasing(residual, slope, lo, hi, guess);
}

// t such that P(T > t) = q for 0 < q <= 1/2.
inline double student_t_upper_quantile(double dof, double q) {
  if (q == 0.5) return 0.0;
  const DistributionModel model = StudentTModel{dof};
  auto residual = [&](double t) { return q - student_t_upper(dof, t); };
  auto slope = [&](double t) { return pdf(model, t); };
  double guess = special::normal_quantile_upper(q);
  double lo = 0.0;
  double hi = std::max(guess, 1.0);
  for (int i = 0; residual(hi) < 0.0; ++i) {
    lo = hi;
    hi *= 2.0;
    if (i > 4000) throw Error(ErrorCode::convergence_failure, "t quantile bracket search failed");
  }
  return solve_increasing(residual, slope, lo, hi, guess);
}

inline void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::domain_error, "probability must lie in (0, 1), got " + std::to_string(p));
  }
}

}  // namespace detail

inline double normal_quantile(double p) { return special::normal_quantile(p); }

/// Inverse CDF: x with cdf(model, x) = p.
inline double quantile_of(const DistributionModel& model, double p) {
  detail::check_probability(p);
  validate(model);
  return std::visit(
      [p](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) {
          return m.mean + m.sd * special::normal_quantile(p);
        } else if constexpr (std::is_same_v<M, GammaModel>) {
          return p <= 0.5 ? m.scale * detail::gamma_standard_quantile(m.shape, p, true)
                          : m.scale * detail::gamma_standard_quantile(m.shape, 1.0 - p, false);
        } else if constexpr (std::is_same_v<M, ChiSquareModel>) {
          return 0.0;
        } else {
          return p < 0.5 ? -detail::student_t_upper_quantile(m.dof, p)
                         : detail::student_t_upper_quantile(m.dof, 1.0 - p);
        }
      },
      detail::canonical(model));
}

/// Upper-tail inverse: x with sf(model, x) = q. Use this for 1 - tiny
/// probabilities, which cannot be represented as a cdf target.
inline double upper_quantile_of(const DistributionModel& model, double q) {
  detail::check_probability(q);
  validate(model);
  return std::visit(
      [q](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) {
          return m.mean + m.sd * special::normal_quantile_upper(q);
        } else if constexpr (std::is_same_v<M, GammaModel>) {
          return q <= 0.5 ? m.scale * detail::gamma_standard_quantile(m.shape, q, false)
                          : m.scale * detail::gamma_standard_quantile(m.shape, 1.0 - q, true);
        } else if constexpr (std::is_same_v<M, ChiSquareModel>) {
          return 0.0;
        } else {
          return q <= 0.5 ? detail::student_t_upper_quantile(m.dof, q)
                          : -detail::student_t_upper_quantile(m.dof, 1.0 - q);
        }
      },
      detail::canonical(model));
}

// Method-of-moments fitters.

inline DistributionModel fit_normal(const Sample& sample) {
  if (sample.size() < 2 || !(sample.sd() > 0.0)) {
    throw Error(ErrorCode::degenerate_variance, "normal fit needs a sample with positive variance");
  }
  return NormalModel{sample.mean(), sample.sd()};
}

/// shape = n * mean^2 / SS, scale = SS / (n * mean), SS the sum of squared
/// deviations.
inline DistributionModel fit_gamma_mom(const Sample& sample) {
  if (sample.min() <= 0.0) {
    throw Error(ErrorCode::non_positive_data, "gamma fit needs strictly positive data");
  }
  if (sample.size() < 2 || !(sample.sum_sq_dev() > 0.0)) {
    throw Error(ErrorCode::degenerate_variance, "gamma fit needs a sample with positive variance");
  }
  const double n = static_cast<double>(sample.size());
  const double mean = sample.mean();
  const double ss = sample.sum_sq_dev();
  return GammaModel{n * mean * mean / ss, ss / (n * mean)};
}

inline DistributionModel fit_chi_square_mom(const Sample& sample) {
  if (!(sample.mean() > 0.0)) {
    throw Error(ErrorCode::non_positive_mean, "chi-square fit needs a positive sample mean");
  }
  return ChiSquareModel{sample.mean()};
}

/// Matches dof / (dof - 2) = S^2; infeasible unless S^2 > 1.
inline DistributionModel fit_t_mom(const Sample& sample) {
  const double s2 = sample.variance();
  if (sample.size() < 2 || !(s2 > 1.0)) {
    throw Error(ErrorCode::variance_at_most_one,
                "t fit needs sample variance > 1, got " + std::to_string(s2));
  }
  return StudentTModel{2.0 * s2 / (s2 - 1.0)};
}

inline DistributionModel fit_model(Family family, const Sample& sample) {
  switch (family) {
    case Family::normal: return fit_normal(sample);
    case Family::gamma: return fit_gamma_mom(sample);
    case Family::chi_square: return fit_chi_square_mom(sample);
    case Family::student_t: return fit_t_mom(sample);
  }
  throw Error(ErrorCode::invalid_parameters, "unknown family");
}

}  // namespace chaubox
