#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "chaubox/csv.hpp"
#include "chaubox/datasets.hpp"
#include "chaubox/format.hpp"
#include "chaubox/report.hpp"

using namespace chaubox;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::io_error;
}

}  // namespace

TEST(Dataset, FileMatchesEmbeddedCopy) {
  const std::string file = slurp(std::string(CHAUBOX_DATA_DIR) + "/hk_pay.csv");
  EXPECT_EQ(file, std::string(datasets::hk_pay_csv));
}

TEST(Dataset, EighteenYearsBothGrades) {
  const auto table = csv::parse(datasets::hk_pay_csv);
  EXPECT_EQ(table.rows.size(), 19u);
  const auto junior = csv::select_column(table, std::string("junior"));
  const auto senior = csv::select_column(table, std::size_t{2});
  EXPECT_EQ(junior.values.size(), 18u);
  EXPECT_EQ(senior.name, "senior");
  EXPECT_EQ(senior.values[15], -5.38);
  EXPECT_EQ(junior.lines.front(), 2u);
}

// Every value reformatted at two decimals reproduces its source text.
TEST(Dataset, TwoDecimalRoundTrip) {
  const auto table = csv::parse(datasets::hk_pay_csv);
  for (const char* name : {"junior", "senior"}) {
    const auto col = csv::select_column(table, std::string(name));
    for (std::size_t i = 0; i < col.values.size(); ++i) {
      EXPECT_EQ(format_fixed(col.values[i], 2), col.text[i]) << name << " row " << i;
    }
  }
}

TEST(Csv, HeaderlessIndexSelection) {
  const auto t = csv::parse("1.5,2\n  3 , 4\n\n5,+6\n");
  const auto c = csv::select_column(t, std::size_t{1});
  EXPECT_EQ(c.values, (std::vector<double>{2.0, 4.0, 6.0}));
  EXPECT_EQ(c.name, "column_1");
  EXPECT_EQ(c.lines, (std::vector<std::size_t>{1, 2, 4}));
}

TEST(Csv, Errors) {
  EXPECT_EQ(code_of([] { csv::parse("a,b\n1\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { csv::parse("\n  \n"); }), ErrorCode::empty_input);
  EXPECT_EQ(code_of([] { csv::select_column(csv::parse("a\n1\nx\n"), std::string("a")); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { csv::select_column(csv::parse("a\n1\n"), std::string("b")); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { csv::select_column(csv::parse("a\n"), std::string("a")); }), ErrorCode::empty_input);
  EXPECT_EQ(code_of([] { csv::select_column(csv::parse("a\nnan\n"), std::string("a")); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { csv::read_file("/nonexistent/file.csv"); }), ErrorCode::io_error);
  try {
    csv::select_column(csv::parse("v\n1\n2\noops\n"), std::string("v"));
  } catch (const Error& e) {
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 4u);
  }
}

TEST(Csv, InlineValues) {
  EXPECT_EQ(csv::parse_inline("1, 2.5 3;-4\n5"), (std::vector<double>{1.0, 2.5, 3.0, -4.0, 5.0}));
  EXPECT_EQ(code_of([] { csv::parse_inline("1,two,3"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { csv::parse_inline(" , "); }), ErrorCode::empty_input);
}

TEST(Format, FixedNeverNegativeZero) {
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(format_fixed(-0.006, 2), "-0.01");
  EXPECT_EQ(format_fixed(2.345678, 3), "2.346");
}

TEST(Format, TextTableAligns) {
  TextTable t({"name", "value"});
  t.add({"a", "1.00"});
  t.add({"longer", "10.00"});
  EXPECT_EQ(t.str(), "name    value\na        1.00\nlonger  10.00\n");
}

TEST(Report, DetectionJsonShape) {
  const Sample s(datasets::contaminated_toy);
  const auto r = detect(s, method::ChauvenetType{});
  const auto j = report::detection_json(r);
  EXPECT_EQ(j["method"]["name"], "chauvenet_type");
  EXPECT_EQ(j["n"], 9);
  EXPECT_EQ(j["summary"]["n_flagged"], 2);
  EXPECT_EQ(j["summary"]["outside"], 2);
  EXPECT_EQ(j["labels"].size(), 9u);
  EXPECT_EQ(j["labels"][7]["label"], "outside");
  EXPECT_DOUBLE_EQ(j["fences"]["lower"].get<double>(), r.fence.lower);
  EXPECT_FALSE(j.contains("model"));
}

TEST(Report, JsonlHasOneLinePerObservationPlusSummary) {
  const Sample s(datasets::contaminated_toy);
  const auto text = report::detection_jsonl(detect(s, method::Tukey{}));
  std::istringstream in(text);
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(in, line)) lines.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0]["index"], 0);
  EXPECT_TRUE(lines.back().contains("summary"));
  EXPECT_FALSE(lines.back()["summary"].contains("labels"));
}

TEST(Report, NonNormalCarriesModelAndNotes) {
  const std::vector<double> v = {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.35};
  const auto f = compute_fences(Sample(v), method::ChauvenetNonNormal{Family::student_t, std::nullopt});
  const auto j = report::fence_json(f);
  EXPECT_EQ(j["model"]["family"], "normal");
  EXPECT_EQ(j["method"]["family"], "student_t");
  EXPECT_EQ(j["notes"].size(), 1u);
}

TEST(Report, FenceTableRows) {
  const Sample s(datasets::contaminated_toy);
  const std::vector<FencePair> fences = {compute_fences(s, method::Tukey{}),
                                         compute_fences(s, method::ChauvenetType{})};
  const auto table = report::fence_table(fences, s.size(), 3);
  EXPECT_NE(table.find("chauvenet_type"), std::string::npos);
  EXPECT_NE(table.find("-3.237"), std::string::npos);
  EXPECT_NE(table.find("4.124"), std::string::npos);
}
