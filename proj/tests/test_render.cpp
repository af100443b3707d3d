#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include "chaubox/csv.hpp"
#include "chaubox/datasets.hpp"
#include "chaubox/render.hpp"

using namespace chaubox;
namespace pt = boost::property_tree;

namespace {

Panel make_panel(const std::string& title, const std::vector<double>& v, const FenceMethod& m) {
  Sample s(v);
  DetectionReport r = detect(s, m);
  return Panel{title, std::move(s), std::move(r)};
}

std::vector<double> hk_column(const char* name) {
  return csv::select_column(csv::parse(datasets::hk_pay_csv), std::string(name)).values;
}

pt::ptree parse_svg(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

struct Element {
  std::string tag;
  const pt::ptree* node;
};

void collect(const pt::ptree& tree, std::vector<Element>& out) {
  for (const auto& [tag, child] : tree) {
    if (tag == "<xmlattr>") continue;
    out.push_back({tag, &child});
    collect(child, out);
  }
}

std::string attr(const Element& e, const std::string& name) {
  return e.node->get<std::string>("<xmlattr>." + name, "");
}

std::vector<Element> by_class(const pt::ptree& svg, const std::string& cls) {
  std::vector<Element> all;
  collect(svg, all);
  std::vector<Element> out;
  for (const auto& e : all) {
    if (attr(e, "class") == cls) out.push_back(e);
  }
  return out;
}

PlotSpec pay_spec() {
  PlotSpec spec;
  spec.panels.push_back(make_panel("junior", hk_column("junior"), method::ChauvenetType{}));
  spec.panels.push_back(make_panel("senior", hk_column("senior"), method::ChauvenetType{}));
  return spec;
}

}  // namespace

TEST(Render, IsWellFormedXml) {
  const auto svg = render_boxplots(pay_spec());
  const auto tree = parse_svg(svg);
  EXPECT_EQ(tree.get<std::string>("svg.<xmlattr>.xmlns"), "http://www.w3.org/2000/svg");
  EXPECT_EQ(by_class(tree.get_child("svg"), "panel").size(), 2u);
  EXPECT_EQ(by_class(tree.get_child("svg"), "box").size(), 2u);
}

TEST(Render, GlyphCountEqualsFlagged) {
  const auto spec = pay_spec();
  const auto tree = parse_svg(render_boxplots(spec));
  const auto& svg = tree.get_child("svg");
  std::size_t flagged = 0;
  for (const auto& p : spec.panels) flagged += p.report.n_flagged;
  EXPECT_EQ(by_class(svg, "outlier").size(), flagged);
  EXPECT_EQ(flagged, 4u);
  for (const auto& g : by_class(svg, "panel")) {
    EXPECT_EQ(by_class(*g.node, "outlier").size(), std::stoul(attr(g, "data-n-flagged")));
  }
}

// Every drawn value sits where the affine axis map puts it, within half a pixel.
TEST(Render, ValuesFollowTheAxisMap) {
  const auto tree = parse_svg(render_boxplots(pay_spec()));
  const auto& svg = tree.get_child("svg");
  const double lo = svg.get<double>("<xmlattr>.data-axis-min");
  const double hi = svg.get<double>("<xmlattr>.data-axis-max");
  const double top = svg.get<double>("<xmlattr>.data-plot-top");
  const double bottom = svg.get<double>("<xmlattr>.data-plot-bottom");
  auto y_of = [&](double v) { return top + (hi - v) / (hi - lo) * (bottom - top); };

  std::size_t checked = 0;
  for (const auto& e : by_class(svg, "outlier")) {
    EXPECT_NEAR(std::stod(attr(e, "cy")), y_of(std::stod(attr(e, "data-value"))), 0.5);
    ++checked;
  }
  for (const char* cls : {"median", "whisker-cap"}) {
    for (const auto& e : by_class(svg, cls)) {
      EXPECT_NEAR(std::stod(attr(e, "y1")), y_of(std::stod(attr(e, "data-value"))), 0.5);
      ++checked;
    }
  }
  for (const auto& e : by_class(svg, "box")) {
    EXPECT_NEAR(std::stod(attr(e, "y")), y_of(std::stod(attr(e, "data-q3"))), 0.5);
    EXPECT_NEAR(std::stod(attr(e, "y")) + std::stod(attr(e, "height")), y_of(std::stod(attr(e, "data-q1"))), 0.5);
    ++checked;
  }
  EXPECT_GT(checked, 8u);
}

TEST(Render, WhiskersEndAtExtremeInliers) {
  const auto spec = pay_spec();
  const auto tree = parse_svg(render_boxplots(spec));
  const auto whiskers = by_class(tree.get_child("svg"), "whisker");
  ASSERT_EQ(whiskers.size(), 4u);
  EXPECT_EQ(std::stod(attr(whiskers[0], "data-value")), spec.panels[0].report.whisker_low);
  EXPECT_EQ(std::stod(attr(whiskers[1], "data-value")), spec.panels[0].report.whisker_high);
}

TEST(Render, ContaminatedPointsAreMarked) {
  PlotSpec spec;
  const std::vector<double> v = {-1.938, -1.177, -0.854, -0.353, 0.890, 0.916, 1.741, 100.0, 100.0};
  Sample s(v);
  std::vector<bool> truth(9, false);
  truth[7] = truth[8] = true;
  auto r = classify(s, compute_fences(s, method::ChauvenetType{}), std::nullopt, truth);
  spec.panels.push_back({"toy", std::move(s), std::move(r)});
  const auto svg = render_boxplots(spec);
  const auto tree = parse_svg(svg);
  const auto marks = by_class(tree.get_child("svg"), "contaminated");
  EXPECT_EQ(marks.size(), 2u);
  // Tied values are spread horizontally.
  const auto dots = by_class(tree.get_child("svg"), "outlier");
  ASSERT_EQ(dots.size(), 2u);
  EXPECT_NE(attr(dots[0], "cx"), attr(dots[1], "cx"));
}

TEST(Render, Deterministic) {
  EXPECT_EQ(render_boxplots(pay_spec()), render_boxplots(pay_spec()));
}

TEST(Render, EscapesTitles) {
  PlotSpec spec;
  spec.panels.push_back(make_panel("a < b & \"c\"", hk_column("junior"), method::Tukey{}));
  const auto tree = parse_svg(render_boxplots(spec));
  const auto titles = by_class(tree.get_child("svg"), "title");
  ASSERT_EQ(titles.size(), 1u);
  EXPECT_EQ(titles[0].node->data(), "a < b & \"c\"");
}

TEST(Render, Errors) {
  PlotSpec empty;
  try {
    render_boxplots(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_spec);
  }
  PlotSpec mismatched;
  Panel p = make_panel("x", hk_column("junior"), method::Tukey{});
  Panel q = make_panel("y", hk_column("senior"), method::Tukey{});
  mismatched.panels.push_back({"bad", std::move(p.sample), std::move(q.report)});
  try {
    render_boxplots(mismatched);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inconsistent_panel);
  }
}
