#pragma once

// Standalone SVG boxplots, one vertical box per panel on a shared value axis.
//
// The value axis is recorded on the root element as data-axis-min/max and
// data-plot-top/bottom: a value v is drawn at
//   y = plot_top + (axis_max - v) / (axis_max - axis_min) * (plot_bottom - plot_top).
// Every value-bearing element carries its value in a data-value attribute.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chaubox/detect.hpp"
#include "chaubox/error.hpp"
#include "chaubox/format.hpp"
#include "chaubox/random.hpp"
#include "chaubox/sample.hpp"

namespace chaubox {

struct Panel {
  std::string title;
  Sample sample;
  DetectionReport report;
};

struct PlotSpec {
  std::vector<Panel> panels;
  double panel_width = 150.0;
  double plot_height = 360.0;
  double margin_left = 60.0;
  double margin_right = 20.0;
  double margin_top = 40.0;
  double margin_bottom = 20.0;
  /// Fraction of the data range added above and below.
  double padding = 0.05;
  std::optional<std::pair<double, double>> axis_range;
  std::uint64_t jitter_seed = 7;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) { return format_fixed(v, 2); }

// Shortest text that parses back to the same double.
inline std::string exact(double v) {
  char buf[64];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline void check_panel(const Panel& panel, std::size_t index) {
  const auto original = panel.sample.original();
  const auto& r = panel.report;
  bool ok = r.values.size() == original.size() && r.labels.size() == original.size() &&
            std::equal(original.begin(), original.end(), r.values.begin());
  if (ok && r.contamination) ok = r.contamination->size() == original.size();
  if (ok) {
    ok = r.whisker_low >= panel.sample.min() && r.whisker_high <= panel.sample.max() &&
         r.whisker_low <= r.whisker_high;
  }
  if (!ok) {
    throw Error(ErrorCode::inconsistent_panel,
                "panel " + std::to_string(index) + " ('" + panel.title + "') does not match its sample");
  }
}

inline double nice_step(double range) {
  const double raw = range / 6.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / magnitude;
  const double nice = f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0;
  return nice * magnitude;
}

}  // namespace detail

inline std::string render_boxplots(const PlotSpec& spec) {
  if (spec.panels.empty()) {
    throw Error(ErrorCode::empty_spec, "nothing to plot: no panels");
  }
  for (std::size_t i = 0; i < spec.panels.size(); ++i) detail::check_panel(spec.panels[i], i);

  double axis_min;
  double axis_max;
  if (spec.axis_range) {
    std::tie(axis_min, axis_max) = *spec.axis_range;
    if (!(axis_min < axis_max)) {
      throw Error(ErrorCode::invalid_parameters, "axis range must satisfy min < max");
    }
  } else {
    double lo = spec.panels.front().sample.min();
    double hi = spec.panels.front().sample.max();
    for (const auto& p : spec.panels) {
      lo = std::min(lo, p.sample.min());
      hi = std::max(hi, p.sample.max());
    }
    const double pad = hi > lo ? spec.padding * (hi - lo) : std::max(1.0, std::fabs(lo) * spec.padding);
    axis_min = lo - pad;
    axis_max = hi + pad;
  }

  const double top = spec.margin_top;
  const double bottom = spec.margin_top + spec.plot_height;
  const double width = spec.margin_left + spec.panel_width * static_cast<double>(spec.panels.size()) + spec.margin_right;
  const double height = bottom + spec.margin_bottom;
  auto y_of = [&](double v) { return top + (axis_max - v) / (axis_max - axis_min) * (bottom - top); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(width) + "\" height=\"" +
         detail::num(height) + "\" viewBox=\"0 0 " + detail::num(width) + " " + detail::num(height) +
         "\" data-axis-min=\"" + detail::exact(axis_min) + "\" data-axis-max=\"" + detail::exact(axis_max) +
         "\" data-plot-top=\"" + detail::num(top) + "\" data-plot-bottom=\"" + detail::num(bottom) + "\">\n";
  svg += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + detail::num(width) + "\" height=\"" +
         detail::num(height) + "\" fill=\"white\"/>\n";

  // Axis with ticks.
  svg += "<g class=\"axis\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"10\">\n";
  const double axis_x = spec.margin_left - 10.0;
  svg += "<line x1=\"" + detail::num(axis_x) + "\" y1=\"" + detail::num(top) + "\" x2=\"" + detail::num(axis_x) +
         "\" y2=\"" + detail::num(bottom) + "\"/>\n";
  const double step = detail::nice_step(axis_max - axis_min);
  const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
  const auto first_tick = static_cast<long long>(std::ceil(axis_min / step));
  const auto last_tick = static_cast<long long>(std::floor(axis_max / step));
  for (long long i = first_tick; i <= last_tick; ++i) {
    const double t = static_cast<double>(i) * step;
    const double y = y_of(t);
    svg += "<line class=\"tick\" data-value=\"" + detail::exact(t) + "\" x1=\"" + detail::num(axis_x - 4.0) +
           "\" y1=\"" + detail::num(y) + "\" x2=\"" + detail::num(axis_x) + "\" y2=\"" + detail::num(y) + "\"/>\n";
    svg += "<text stroke=\"none\" text-anchor=\"end\" x=\"" + detail::num(axis_x - 6.0) + "\" y=\"" +
           detail::num(y + 3.5) + "\">" + format_fixed(t, decimals) + "</text>\n";
  }
  svg += "</g>\n";

  for (std::size_t p = 0; p < spec.panels.size(); ++p) {
    const Panel& panel = spec.panels[p];
    const DetectionReport& r = panel.report;
    const double cx = spec.margin_left + spec.panel_width * (static_cast<double>(p) + 0.5);
    const double half = spec.panel_width * 0.25;
    const double cap = half * 0.5;
    const double jitter = half * 0.3;

    svg += "<g class=\"panel\" data-index=\"" + std::to_string(p) + "\" data-title=\"" +
           detail::xml_escape(panel.title) + "\" data-n-flagged=\"" + std::to_string(r.n_flagged) +
           "\" stroke=\"black\" fill=\"none\">\n";
    svg += "<text class=\"title\" stroke=\"none\" fill=\"black\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\" x=\"" + detail::num(cx) + "\" y=\"" + detail::num(top - 15.0) + "\">" +
           detail::xml_escape(panel.title) + "</text>\n";

    const double q1 = panel.sample.q1();
    const double q3 = panel.sample.q3();
    const double median = panel.sample.median();
    auto hline = [&](const char* cls, double v, double x1, double x2) {
      svg += std::string("<line class=\"") + cls + "\" data-value=\"" + detail::exact(v) + "\" x1=\"" +
             detail::num(x1) + "\" y1=\"" + detail::num(y_of(v)) + "\" x2=\"" + detail::num(x2) + "\" y2=\"" +
             detail::num(y_of(v)) + "\"/>\n";
    };
    auto whisker = [&](double from, double to) {
      svg += "<line class=\"whisker\" data-from=\"" + detail::exact(from) + "\" data-value=\"" + detail::exact(to) +
             "\" x1=\"" + detail::num(cx) + "\" y1=\"" + detail::num(y_of(from)) + "\" x2=\"" + detail::num(cx) +
             "\" y2=\"" + detail::num(y_of(to)) + "\" stroke-dasharray=\"4 2\"/>\n";
    };

    whisker(q1, r.whisker_low);
    whisker(q3, r.whisker_high);
    hline("whisker-cap", r.whisker_low, cx - cap, cx + cap);
    hline("whisker-cap", r.whisker_high, cx - cap, cx + cap);
    svg += "<rect class=\"box\" data-q1=\"" + detail::exact(q1) + "\" data-q3=\"" + detail::exact(q3) + "\" x=\"" +
           detail::num(cx - half) + "\" y=\"" + detail::num(y_of(q3)) + "\" width=\"" + detail::num(2.0 * half) +
           "\" height=\"" + detail::num(y_of(q1) - y_of(q3)) + "\" fill=\"#dddddd\"/>\n";
    hline("median", median, cx - half, cx + half);

    // Glyph points: flagged or known-contaminated observations. Points sharing
    // a value are spread horizontally by a fixed-seed jitter.
    std::vector<std::size_t> glyphs;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const bool contaminated = r.contamination && (*r.contamination)[i];
      if (r.labels[i] != Label::inlier || contaminated) glyphs.push_back(i);
    }
    std::map<double, std::size_t> multiplicity;
    for (std::size_t i : glyphs) ++multiplicity[r.values[i]];
    RandomStream rng(stream_seed(spec.jitter_seed, p));

    for (std::size_t i : glyphs) {
      const double v = r.values[i];
      const double x = multiplicity[v] > 1 ? cx + (2.0 * rng.uniform() - 1.0) * jitter : cx;
      const double y = y_of(v);
      const std::string attrs = " data-index=\"" + std::to_string(i) + "\" data-value=\"" + detail::exact(v) + "\"";
      if (r.labels[i] != Label::inlier) {
        svg += "<circle class=\"outlier\"" + attrs + " data-label=\"" + std::string(to_string(r.labels[i])) +
               "\" cx=\"" + detail::num(x) + "\" cy=\"" + detail::num(y) + "\" r=\"2.5\" fill=\"black\"/>\n";
      }
      if (r.contamination && (*r.contamination)[i]) {
        const double s = 4.0;
        svg += "<path class=\"contaminated\"" + attrs + " d=\"M" + detail::num(x - s) + " " + detail::num(y - s) +
               " L" + detail::num(x + s) + " " + detail::num(y + s) + " M" + detail::num(x - s) + " " +
               detail::num(y + s) + " L" + detail::num(x + s) + " " + detail::num(y - s) + "\"/>\n";
      }
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace chaubox
