#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "chaubox/detect.hpp"
#include "chaubox/dist.hpp"
#include "chaubox/error.hpp"
#include "chaubox/fences.hpp"
#include "chaubox/random.hpp"
#include "chaubox/sample.hpp"

namespace chaubox {

namespace generator {

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
};
struct ChiSquare {
  double dof = 8.0;
};
struct StudentT {
  double dof = 8.0;
};
struct Gamma {
  double shape = 1.0;
  double scale = 1.0;
};
struct Beta {
  double a = 2.0;
  double b = 5.0;
};
struct Exponential {
  double rate = 1.0;
};
struct LogNormal {
  double meanlog = 0.0;
  double sdlog = 1.0;
};

}  // namespace generator

using Generator = std::variant<generator::Normal, generator::ChiSquare, generator::StudentT,
                               generator::Gamma, generator::Beta, generator::Exponential,
                               generator::LogNormal>;

inline std::string describe(const Generator& g) {
  std::ostringstream out;
  out.precision(6);
  std::visit(
      [&](const auto& v) {
        using G = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<G, generator::Normal>) out << "normal(" << v.mean << ", " << v.sd << ")";
        else if constexpr (std::is_same_v<G, generator::ChiSquare>) out << "chi_square(" << v.dof << ")";
        else if constexpr (std::is_same_v<G, generator::StudentT>) out << "student_t(" << v.dof << ")";
        else if constexpr (std::is_same_v<G, generator::Gamma>) out << "gamma(" << v.shape << ", " << v.scale << ")";
        else if constexpr (std::is_same_v<G, generator::Beta>) out << "beta(" << v.a << ", " << v.b << ")";
        else if constexpr (std::is_same_v<G, generator::Exponential>) out << "exponential(" << v.rate << ")";
        else out << "log_normal(" << v.meanlog << ", " << v.sdlog << ")";
      },
      g);
  return out.str();
}

inline double draw(const Generator& g, RandomStream& rng) {
  return std::visit(
      [&](const auto& v) -> double {
        using G = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<G, generator::Normal>) return rng.normal(v.mean, v.sd);
        else if constexpr (std::is_same_v<G, generator::ChiSquare>) return rng.chi_square(v.dof);
        else if constexpr (std::is_same_v<G, generator::StudentT>) return rng.student_t(v.dof);
        else if constexpr (std::is_same_v<G, generator::Gamma>) return rng.gamma(v.shape, v.scale);
        else if constexpr (std::is_same_v<G, generator::Beta>) return rng.beta(v.a, v.b);
        else if constexpr (std::is_same_v<G, generator::Exponential>) return rng.exponential(v.rate);
        else return rng.log_normal(v.meanlog, v.sdlog);
      },
      g);
}

struct Contamination {
  double value = 0.0;
  std::size_t count = 0;
};

struct SimConfig {
  Generator family = generator::Normal{};
  std::size_t n = 50;
  std::vector<Contamination> contamination;
  std::size_t replicates = 1;
  std::uint64_t seed = 1863;
  std::vector<FenceMethod> methods;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;

  std::size_t contaminated_count() const noexcept {
    std::size_t total = 0;
    for (const auto& c : contamination) total += c.count;
    return total;
  }
  std::size_t genuine_count() const noexcept { return n - contaminated_count(); }
};

inline void validate(const SimConfig& config) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::invalid_config, why); };
  if (config.replicates < 1) fail("replicates must be >= 1");
  if (config.n < 4) fail("n must be >= 4");
  if (config.methods.empty()) fail("at least one fence method is required");
  for (const auto& c : config.contamination) {
    if (!std::isfinite(c.value)) fail("contamination values must be finite");
  }
  if (4 * config.contaminated_count() >= config.n) {
    fail("contamination count must stay below n/4");
  }
  const bool params_ok = std::visit(
      [](const auto& v) {
        using G = std::decay_t<decltype(v)>;
        auto pos = [](double x) { return x > 0.0 && std::isfinite(x); };
        if constexpr (std::is_same_v<G, generator::Normal>) return std::isfinite(v.mean) && pos(v.sd);
        else if constexpr (std::is_same_v<G, generator::ChiSquare> || std::is_same_v<G, generator::StudentT>) return pos(v.dof);
        else if constexpr (std::is_same_v<G, generator::Gamma>) return pos(v.shape) && pos(v.scale);
        else if constexpr (std::is_same_v<G, generator::Beta>) return pos(v.a) && pos(v.b);
        else if constexpr (std::is_same_v<G, generator::Exponential>) return pos(v.rate);
        else return std::isfinite(v.meanlog) && pos(v.sdlog);
      },
      config.family);
  if (!params_ok) fail("invalid generator parameters for " + describe(config.family));
}

/// Per-method counts from one replicate.
struct ReplicateCounts {
  std::size_t flagged = 0;
  std::size_t false_positives = 0;
  std::size_t true_positives = 0;
};

struct ReplicateOutcome {
  std::vector<ReplicateCounts> per_method;
};

/// Draws and analyses replicate `index`. Depends only on (config, index).
inline ReplicateOutcome run_replicate(const SimConfig& config, std::size_t index) {
  RandomStream rng(stream_seed(config.seed, index));
  const std::size_t genuine = config.genuine_count();

  std::vector<double> data;
  data.reserve(config.n);
  for (std::size_t i = 0; i < genuine; ++i) data.push_back(draw(config.family, rng));
  std::vector<bool> truth(genuine, false);
  for (const auto& c : config.contamination) {
    for (std::size_t j = 0; j < c.count; ++j) {
      data.push_back(c.value);
      truth.push_back(true);
    }
  }

  const Sample sample(data);
  ReplicateOutcome outcome;
  outcome.per_method.reserve(config.methods.size());
  for (const auto& m : config.methods) {
    const FencePair fence = compute_fences(sample, m);
    const DetectionReport report = classify(sample, fence);
    ReplicateCounts counts;
    counts.flagged = report.n_flagged;
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
      if (report.labels[i] == Label::inlier) continue;
      if (truth[i]) ++counts.true_positives; else ++counts.false_positives;
    }
    outcome.per_method.push_back(counts);
  }
  return outcome;
}

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct MethodSummary {
  std::string method;
  Estimate flagged;
  Estimate false_positives;
  Estimate true_positives;
  /// False positives per genuine observation.
  Estimate outside_rate;
  std::size_t max_flagged = 0;
};

struct SimResult {
  std::string family;
  std::size_t n = 0;
  std::size_t n_genuine = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<Contamination> contamination;
  std::vector<MethodSummary> methods;
};

namespace detail {

inline Estimate estimate(std::span<const double> xs) {
  Estimate e;
  const double r = static_cast<double>(xs.size());
  e.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / r;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.standard_error = std::sqrt(ss / (r - 1.0) / r);
  }
  return e;
}

}  // namespace detail

/// Reduces replicate outcomes in index order, so the result is independent of
/// how the replicates were scheduled.
inline SimResult aggregate(const SimConfig& config, std::span<const ReplicateOutcome> outcomes) {
  SimResult result;
  result.family = describe(config.family);
  result.n = config.n;
  result.n_genuine = config.genuine_count();
  result.replicates = outcomes.size();
  result.seed = config.seed;
  result.contamination = config.contamination;

  const double genuine = static_cast<double>(result.n_genuine);
  std::vector<double> flagged(outcomes.size());
  std::vector<double> fp(outcomes.size());
  std::vector<double> tp(outcomes.size());
  std::vector<double> rate(outcomes.size());
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    MethodSummary s;
    s.method = method_name(config.methods[m]);
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      const auto& c = outcomes[r].per_method[m];
      flagged[r] = static_cast<double>(c.flagged);
      fp[r] = static_cast<double>(c.false_positives);
      tp[r] = static_cast<double>(c.true_positives);
      rate[r] = fp[r] / genuine;
      s.max_flagged = std::max(s.max_flagged, c.flagged);
    }
    s.flagged = detail::estimate(flagged);
    s.false_positives = detail::estimate(fp);
    s.true_positives = detail::estimate(tp);
    s.outside_rate = detail::estimate(rate);
    result.methods.push_back(std::move(s));
  }
  return result;
}

inline std::vector<ReplicateOutcome> run_replicates(const SimConfig& config) {
  validate(config);
  std::vector<ReplicateOutcome> outcomes(config.replicates);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.replicates)));
  if (workers == 1) {
    for (std::size_t r = 0; r < config.replicates; ++r) outcomes[r] = run_replicate(config, r);
    return outcomes;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < config.replicates; r = next++) {
        try {
          outcomes[r] = run_replicate(config, r);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = config.replicates;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

inline SimResult run_simulation(const SimConfig& config) {
  const auto outcomes = run_replicates(config);
  return aggregate(config, outcomes);
}

/// Mean per-observation false-positive rate on clean data, with its Monte
/// Carlo standard error.
inline Estimate estimate_outside_rate(const Generator& family, std::size_t n, const FenceMethod& m,
                                      std::size_t replicates, std::uint64_t seed, unsigned threads = 1) {
  SimConfig config;
  config.family = family;
  config.n = n;
  config.replicates = replicates;
  config.seed = seed;
  config.methods = {m};
  config.threads = threads;
  return run_simulation(config).methods.front().outside_rate;
}

}  // namespace chaubox
