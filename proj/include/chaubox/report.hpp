#pragma once

// JSON and aligned-text serialization of fences, detection reports and
// simulation results.
//
// Detection report JSON:
//   { "method": {...}, "n": 18, "coefficients": {"lower", "upper"},
//     "fences": {"lower", "upper"}, "outer_fences"?: {...}, "model"?: {...},
//     "whiskers": {"low", "high"},
//     "labels": [{"index", "value", "label", "contaminated"?}, ...],
//     "summary": {"n_flagged", "inlier", "outside", "far_out"},
//     "notes"?: [...], "warnings"?: [...] }
// The line-oriented form writes one label object per line followed by a
// single {"summary": {...}} line carrying everything except the labels.

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <variant>

#include <nlohmann/json.hpp>

#include "chaubox/detect.hpp"
#include "chaubox/dist.hpp"
#include "chaubox/fences.hpp"
#include "chaubox/format.hpp"
#include "chaubox/sim.hpp"

namespace chaubox::report {

using nlohmann::json;

inline json model_json(const DistributionModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormalModel>) return {{"family", "normal"}, {"mean", m.mean}, {"sd", m.sd}};
        else if constexpr (std::is_same_v<M, GammaModel>) return {{"family", "gamma"}, {"shape", m.shape}, {"scale", m.scale}};
        else if constexpr (std::is_same_v<M, ChiSquareModel>) return {{"family", "chi_square"}, {"dof", m.dof}};
        else return {{"family", "student_t"}, {"dof", m.dof}};
      },
      model);
}

inline json method_json(const FenceMethod& m) {
  json out = {{"name", method_name(m)}};
  std::visit(
      [&](const auto& v) {
        using M = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<M, method::Tukey>) out["k"] = v.k;
        else if constexpr (std::is_same_v<M, method::ExactRate> || std::is_same_v<M, method::Asymptotic>) out["alpha"] = v.alpha;
        else if constexpr (std::is_same_v<M, method::ToleranceLimit>) {
          out["alpha"] = v.alpha;
          out["gamma"] = v.gamma;
        } else if constexpr (std::is_same_v<M, method::ChauvenetNonNormal>) {
          out["family"] = std::string(to_string(v.family));
        }
      },
      m);
  return out;
}

inline json fence_json(const FencePair& f) {
  json out = {
      {"method", method_json(f.method)},
      {"coefficients", {{"lower", f.coefficient_lower}, {"upper", f.coefficient_upper}}},
      {"fences", {{"lower", f.lower}, {"upper", f.upper}}},
  };
  if (f.model) out["model"] = model_json(*f.model);
  if (!f.notes.empty()) out["notes"] = f.notes;
  return out;
}

inline json detection_summary_json(const DetectionReport& r) {
  json out = fence_json(r.fence);
  out["n"] = r.size();
  if (r.outer) out["outer_fences"] = {{"lower", r.outer->lower}, {"upper", r.outer->upper}};
  out["whiskers"] = {{"low", r.whisker_low}, {"high", r.whisker_high}};
  out["summary"] = {{"n_flagged", r.n_flagged},
                    {"inlier", r.count(Label::inlier)},
                    {"outside", r.count(Label::outside)},
                    {"far_out", r.count(Label::far_out)}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

inline json label_json(const DetectionReport& r, std::size_t i) {
  json out = {{"index", i}, {"value", r.values[i]}, {"label", std::string(to_string(r.labels[i]))}};
  if (r.contamination) out["contaminated"] = static_cast<bool>((*r.contamination)[i]);
  return out;
}

inline json detection_json(const DetectionReport& r) {
  json out = detection_summary_json(r);
  json labels = json::array();
  for (std::size_t i = 0; i < r.size(); ++i) labels.push_back(label_json(r, i));
  out["labels"] = std::move(labels);
  return out;
}

inline std::string detection_jsonl(const DetectionReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) out += label_json(r, i).dump() + '\n';
  out += json{{"summary", detection_summary_json(r)}}.dump() + '\n';
  return out;
}

inline std::string fence_table(std::span<const FencePair> fences, std::size_t n, int digits) {
  TextTable table({"method", "n", "k_lower", "k_upper", "lower_fence", "upper_fence"});
  for (const auto& f : fences) {
    table.add({method_name(f.method), std::to_string(n), format_fixed(f.coefficient_lower, digits),
               format_fixed(f.coefficient_upper, digits), format_fixed(f.lower, digits),
               format_fixed(f.upper, digits)});
  }
  return table.str();
}

inline std::string detection_table(const DetectionReport& r, int digits) {
  std::string out;
  out += "method: " + method_name(r.fence.method) + "\n";
  out += "fences: [" + format_fixed(r.fence.lower, digits) + ", " + format_fixed(r.fence.upper, digits) + "]\n";
  if (r.outer) {
    out += "outer:  [" + format_fixed(r.outer->lower, digits) + ", " + format_fixed(r.outer->upper, digits) + "]\n";
  }
  out += "whiskers: [" + format_fixed(r.whisker_low, digits) + ", " + format_fixed(r.whisker_high, digits) + "]\n";
  out += "flagged: " + std::to_string(r.n_flagged) + " of " + std::to_string(r.size()) + "\n";
  for (const auto& note : r.fence.notes) out += "note: " + note + "\n";
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  TextTable table({"index", "value", "label"});
  for (std::size_t i = 0; i < r.size(); ++i) {
    table.add({std::to_string(i), format_fixed(r.values[i], digits), std::string(to_string(r.labels[i]))});
  }
  return out + table.str();
}

inline json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"se", e.standard_error}}; }

inline json sim_json(const SimResult& s) {
  json contamination = json::array();
  for (const auto& c : s.contamination) contamination.push_back({{"value", c.value}, {"count", c.count}});
  json methods = json::array();
  for (const auto& m : s.methods) {
    methods.push_back({{"method", m.method},
                       {"flagged", estimate_json(m.flagged)},
                       {"false_positives", estimate_json(m.false_positives)},
                       {"true_positives", estimate_json(m.true_positives)},
                       {"outside_rate", estimate_json(m.outside_rate)},
                       {"max_flagged", m.max_flagged}});
  }
  return {{"family", s.family},         {"n", s.n},
          {"n_genuine", s.n_genuine},   {"replicates", s.replicates},
          {"seed", s.seed},             {"contamination", std::move(contamination)},
          {"methods", std::move(methods)}};
}

inline std::string sim_table(const SimResult& s, int digits) {
  std::string out = "family: " + s.family + "  n: " + std::to_string(s.n) + "  genuine: " +
                    std::to_string(s.n_genuine) + "  replicates: " + std::to_string(s.replicates) +
                    "  seed: " + std::to_string(s.seed) + "\n";
  TextTable table({"method", "flagged", "se", "false_pos", "true_pos", "outside_rate", "rate_se", "max"});
  for (const auto& m : s.methods) {
    table.add({m.method, format_fixed(m.flagged.mean, digits), format_fixed(m.flagged.standard_error, digits),
               format_fixed(m.false_positives.mean, digits), format_fixed(m.true_positives.mean, digits),
               format_fixed(m.outside_rate.mean, digits + 2), format_fixed(m.outside_rate.standard_error, digits + 2),
               std::to_string(m.max_flagged)});
  }
  return out + table.str();
}

}  // namespace chaubox::report
