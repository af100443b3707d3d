// chaubox: boxplot fences, outlier labels, Monte Carlo rates and SVG plots
// from the command line.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chaubox/chaubox.hpp"

using namespace chaubox;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string data;
  std::vector<std::string> columns;
  std::string methods = "chauvenet_type";
  std::optional<double> k;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::string family;
  std::optional<double> outer_k;
  std::optional<double> q1;
  std::optional<double> q3;
  std::size_t n = 0;
  std::size_t replicates = 1000;
  std::uint64_t seed = 1863;
  std::vector<std::string> contaminate;
  unsigned threads = 1;
  std::string format = "table";
  std::string out;
  int precision = 3;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(csv::trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double number(const std::string& text, const std::string& what) {
  const auto v = csv::parse_number(text);
  if (!v) fail(ErrorCode::invalid_config, what + ": '" + text + "' is not a finite number");
  return *v;
}

// "name" or "name:p1:p2".
std::pair<std::string, std::vector<double>> parse_family_spec(const std::string& spec) {
  auto parts = split(spec, ':');
  std::vector<double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(number(parts[i], "--family parameter"));
  return {parts[0], params};
}

void expect_params(const std::string& name, const std::vector<double>& p, std::size_t lo, std::size_t hi) {
  if (p.size() < lo || p.size() > hi) {
    fail(ErrorCode::invalid_config, "--family " + name + " takes " + std::to_string(lo) +
                                        (lo == hi ? "" : " to " + std::to_string(hi)) + " parameter(s)");
  }
}

// Model family for the non-normal method; parameters make the model explicit.
method::ChauvenetNonNormal non_normal_method(const std::string& spec) {
  if (spec.empty()) return {Family::normal, std::nullopt};
  const auto [name, p] = parse_family_spec(spec);
  const auto family = parse_family(name);
  if (!family) fail(ErrorCode::invalid_config, "unknown model family '" + name + "'");
  method::ChauvenetNonNormal m{*family, std::nullopt};
  if (p.empty()) return m;
  switch (*family) {
    case Family::normal: expect_params(name, p, 2, 2); m.model = NormalModel{p[0], p[1]}; break;
    case Family::gamma: expect_params(name, p, 2, 2); m.model = GammaModel{p[0], p[1]}; break;
    case Family::chi_square: expect_params(name, p, 1, 1); m.model = ChiSquareModel{p[0]}; break;
    case Family::student_t: expect_params(name, p, 1, 1); m.model = StudentTModel{p[0]}; break;
  }
  try {
    validate(*m.model);
  } catch (const Error& e) {
    fail(ErrorCode::invalid_config, e.what());
  }
  return m;
}

Generator parse_generator(const std::string& spec) {
  if (spec.empty()) return generator::Normal{};
  const auto [name, p] = parse_family_spec(spec);
  if (name == "normal") {
    expect_params(name, p, 0, 2);
    return generator::Normal{p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0};
  }
  if (name == "chi_square" || name == "chisq" || name == "chi2") {
    expect_params(name, p, 0, 1);
    return generator::ChiSquare{p.empty() ? 8.0 : p[0]};
  }
  if (name == "student_t" || name == "t") {
    expect_params(name, p, 0, 1);
    return generator::StudentT{p.empty() ? 8.0 : p[0]};
  }
  if (name == "gamma") {
    expect_params(name, p, 2, 2);
    return generator::Gamma{p[0], p[1]};
  }
  if (name == "beta") {
    expect_params(name, p, 2, 2);
    return generator::Beta{p[0], p[1]};
  }
  if (name == "exponential") {
    expect_params(name, p, 0, 1);
    return generator::Exponential{p.empty() ? 1.0 : p[0]};
  }
  if (name == "log_normal") {
    expect_params(name, p, 0, 2);
    return generator::LogNormal{p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0};
  }
  fail(ErrorCode::invalid_config, "unknown generator family '" + name + "'");
}

std::vector<FenceMethod> parse_methods(const Options& o) {
  if (o.k && !(*o.k > 0.0)) fail(ErrorCode::invalid_parameters, "--k must be positive");
  if (o.alpha && !(*o.alpha > 0.0 && *o.alpha < 1.0)) fail(ErrorCode::invalid_parameters, "--alpha must lie in (0, 1)");
  if (o.gamma && !(*o.gamma > 0.0 && *o.gamma < 1.0)) fail(ErrorCode::invalid_parameters, "--gamma must lie in (0, 1)");
  if (o.outer_k && !(*o.outer_k > 0.0)) fail(ErrorCode::invalid_parameters, "--outer-k must be positive");

  const double alpha = o.alpha.value_or(0.05);
  std::vector<FenceMethod> out;
  for (const auto& name : split(o.methods, ',')) {
    if (name == "tukey") out.push_back(method::Tukey{o.k.value_or(1.5)});
    else if (name == "chauvenet_type") out.push_back(method::ChauvenetType{});
    else if (name == "exact_rate" || name == "er") out.push_back(method::ExactRate{alpha});
    else if (name == "tolerance_limit" || name == "tl") out.push_back(method::ToleranceLimit{alpha, o.gamma.value_or(0.9)});
    else if (name == "asymptotic" || name == "af") out.push_back(method::Asymptotic{alpha});
    else if (name == "empirical" || name == "ec") out.push_back(method::Empirical{});
    else if (name == "chauvenet_interval") out.push_back(method::ChauvenetInterval{});
    else if (name == "chauvenet_type_non_normal" || name == "nn") out.push_back(non_normal_method(o.family));
    else fail(ErrorCode::invalid_config, "unknown method '" + name + "'");
  }
  return out;
}

std::vector<Contamination> parse_contamination(const std::vector<std::string>& specs) {
  std::vector<Contamination> out;
  for (const auto& spec : specs) {
    const auto parts = split(spec, ':');
    if (parts.size() != 2) fail(ErrorCode::invalid_config, "--contaminate expects value:count, got '" + spec + "'");
    const double count = number(parts[1], "--contaminate count");
    if (!(count >= 1.0) || count != static_cast<double>(static_cast<std::size_t>(count))) {
      fail(ErrorCode::invalid_config, "--contaminate count must be a positive integer");
    }
    out.push_back({number(parts[0], "--contaminate value"), static_cast<std::size_t>(count)});
  }
  return out;
}

csv::ColumnSelector selector(const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    return static_cast<std::size_t>(std::stoull(text));
  }
  return text;
}

struct Series {
  std::string name;
  std::vector<double> values;
};

// Loads every requested column; with no --column, the first numeric column.
std::vector<Series> load(const Options& o) {
  if (o.input.empty() == o.data.empty()) {
    fail(ErrorCode::invalid_config, "give exactly one of --input or --data");
  }
  if (!o.data.empty()) {
    if (!o.columns.empty()) fail(ErrorCode::invalid_config, "--column applies to --input only");
    return {{"data", csv::parse_inline(o.data)}};
  }
  const csv::Table table = o.input == "builtin:hk_pay" ? csv::parse(datasets::hk_pay_csv) : csv::read_file(o.input);
  std::vector<Series> out;
  if (o.columns.empty()) {
    const std::size_t width = table.rows.front().fields.size();
    for (std::size_t i = 0; i < width; ++i) {
      try {
        auto c = csv::select_column(table, i);
        return {{c.name, std::move(c.values)}};
      } catch (const Error&) {
        if (i + 1 == width) throw;
      }
    }
  }
  for (const auto& c : o.columns) {
    auto col = csv::select_column(table, selector(c));
    out.push_back({col.name, std::move(col.values)});
  }
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) fail(ErrorCode::io_error, "cannot write " + o.out);
  file << text;
  if (!file) fail(ErrorCode::io_error, "write failed for " + o.out);
}

void check_format(const Options& o, std::initializer_list<std::string_view> allowed) {
  for (auto f : allowed) {
    if (o.format == f) return;
  }
  fail(ErrorCode::invalid_config, "format '" + o.format + "' is not available for this command");
}

// Commands -------------------------------------------------------------------

void cmd_fences(const Options& o) {
  check_format(o, {"json", "table"});
  const auto methods = parse_methods(o);
  std::vector<FencePair> fences;
  std::size_t n = 0;
  std::string name;

  if (o.q1 || o.q3) {
    if (!o.q1 || !o.q3 || o.n == 0) fail(ErrorCode::invalid_config, "--q1, --q3 and --n go together");
    if (!o.input.empty() || !o.data.empty()) fail(ErrorCode::invalid_config, "--q1/--q3 replace --input/--data");
    n = o.n;
    name = "quartiles";
    for (const auto& m : methods) fences.push_back(fences_from_quartiles(*o.q1, *o.q3, n, m));
  } else {
    const auto series = load(o);
    if (series.size() != 1) fail(ErrorCode::invalid_config, "fences takes a single --column");
    const Sample sample(series.front().values);
    n = sample.size();
    name = series.front().name;
    for (const auto& m : methods) fences.push_back(compute_fences(sample, m));
  }

  if (o.format == "table") {
    emit(o, report::fence_table(fences, n, o.precision));
    return;
  }
  json list = json::array();
  for (const auto& f : fences) list.push_back(report::fence_json(f));
  emit(o, json{{"column", name}, {"n", n}, {"results", list}}.dump(2) + "\n");
}

void cmd_detect(const Options& o) {
  check_format(o, {"json", "jsonl", "table"});
  const auto methods = parse_methods(o);
  if (methods.size() != 1) fail(ErrorCode::invalid_config, "detect takes exactly one --method");
  const auto series = load(o);
  if (series.size() != 1) fail(ErrorCode::invalid_config, "detect takes a single --column");
  const Sample sample(series.front().values);
  std::optional<FenceMethod> outer;
  if (o.outer_k) outer = method::Tukey{*o.outer_k};
  const auto r = detect(sample, methods.front(), outer);

  if (o.format == "table") emit(o, report::detection_table(r, o.precision));
  else if (o.format == "jsonl") emit(o, report::detection_jsonl(r));
  else emit(o, report::detection_json(r).dump(2) + "\n");
}

void cmd_simulate(const Options& o) {
  check_format(o, {"json", "table"});
  SimConfig config;
  config.methods = parse_methods(o);
  config.family = parse_generator(o.family);
  config.n = o.n == 0 ? 500 : o.n;
  config.replicates = o.replicates;
  config.seed = o.seed;
  config.contamination = parse_contamination(o.contaminate);
  config.threads = o.threads;
  const auto result = run_simulation(config);
  if (o.format == "table") emit(o, report::sim_table(result, o.precision));
  else emit(o, report::sim_json(result).dump(2) + "\n");
}

void cmd_plot(const Options& o) {
  const auto methods = parse_methods(o);
  const auto series = load(o);
  PlotSpec spec;
  for (const auto& s : series) {
    for (const auto& m : methods) {
      Sample sample(s.values);
      DetectionReport r = detect(sample, m);
      spec.panels.push_back({s.name + " / " + method_name(m), std::move(sample), std::move(r)});
    }
  }
  emit(o, render_boxplots(spec));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boxplot fences with sample-size-aware coefficients"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "CSV file, or builtin:hk_pay for the bundled pay data");
    sub->add_option("--data", o.data, "Inline values separated by commas or spaces");
    sub->add_option("--column", o.columns, "Column name or zero-based index");
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", o.methods,
                    "Comma list: tukey, chauvenet_type, exact_rate, tolerance_limit, asymptotic, empirical, "
                    "chauvenet_interval, chauvenet_type_non_normal")
        ->capture_default_str();
    sub->add_option("--k", o.k, "Tukey coefficient (default 1.5)");
    sub->add_option("--alpha", o.alpha, "Level for exact_rate, tolerance_limit, asymptotic (default 0.05)");
    sub->add_option("--gamma", o.gamma, "Confidence for tolerance_limit (default 0.9)");
  };
  auto add_output = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--format", o.format, formats)->capture_default_str();
    sub->add_option("--out", o.out, "Write to a file instead of standard output");
    sub->add_option("--precision", o.precision, "Decimals in table output")->capture_default_str()->check(CLI::Range(0, 17));
  };

  auto* fences = app.add_subcommand("fences", "Fence coefficients and fences per method");
  add_input(fences);
  add_method(fences);
  add_output(fences, "json or table");
  fences->add_option("--family", o.family, "Model for chauvenet_type_non_normal: name to fit, or name:params");
  fences->add_option("--q1", o.q1, "First quartile (with --q3 and --n instead of data)");
  fences->add_option("--q3", o.q3, "Third quartile");
  fences->add_option("--n", o.n, "Sample size for --q1/--q3");

  auto* detect_cmd = app.add_subcommand("detect", "Label every observation");
  add_input(detect_cmd);
  add_method(detect_cmd);
  add_output(detect_cmd, "json, jsonl or table");
  detect_cmd->add_option("--family", o.family, "Model for chauvenet_type_non_normal");
  detect_cmd->add_option("--outer-k", o.outer_k, "Tukey coefficient of outer fences for far_out labels");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo flag counts on generated data");
  add_method(simulate);
  add_output(simulate, "json or table");
  simulate->add_option("--family", o.family,
                       "normal[:mean:sd], chi_square[:dof], student_t[:dof], gamma:shape:scale, beta:a:b, "
                       "exponential[:rate], log_normal[:meanlog:sdlog]");
  simulate->add_option("--n", o.n, "Sample size including contamination (default 500)");
  simulate->add_option("--replicates", o.replicates)->capture_default_str();
  simulate->add_option("--seed", o.seed)->capture_default_str();
  simulate->add_option("--contaminate", o.contaminate, "value:count appended to every sample (repeatable)");
  simulate->add_option("--threads", o.threads, "Worker threads; output does not depend on it")->capture_default_str();

  auto* plot = app.add_subcommand("plot", "SVG boxplots, one panel per column and method");
  add_input(plot);
  add_method(plot);
  plot->add_option("--family", o.family, "Model for chauvenet_type_non_normal");
  plot->add_option("--out", o.out, "Write to a file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*fences) cmd_fences(o);
    else if (*detect_cmd) cmd_detect(o);
    else if (*simulate) cmd_simulate(o);
    else if (*plot) cmd_plot(o);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
