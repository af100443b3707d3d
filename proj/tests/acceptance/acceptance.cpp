// Acceptance suite: one PASS/FAIL line per criterion, with the sub-checks
// that decide it listed underneath. Exit status is nonzero if any criterion
// fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "chaubox/chaubox.hpp"

using namespace chaubox;

namespace {

class Criterion {
 public:
  Criterion(std::string id, std::string title) : id_(std::move(id)), title_(std::move(title)) {}

  void near(const std::string& what, double got, double want, double tol) {
    record(std::fabs(got - want) <= tol,
           what + ": got " + fmt(got) + ", want " + fmt(want) + " +/- " + fmt(tol));
  }

  void within(const std::string& what, double got, double lo, double hi) {
    record(got >= lo && got <= hi, what + ": got " + fmt(got) + ", want in [" + fmt(lo) + ", " + fmt(hi) + "]");
  }

  void holds(const std::string& what, bool ok) { record(ok, what); }

  bool report() const {
    std::cout << (failures_ == 0 ? "PASS " : "FAIL ") << id_ << " " << title_ << "\n" << detail_;
    std::cout.flush();
    return failures_ == 0;
  }

 private:
  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

  void record(bool ok, const std::string& text) {
    if (!ok) ++failures_;
    detail_ += std::string(ok ? "    ok   " : "    MISS ") + text + "\n";
  }

  std::string id_;
  std::string title_;
  std::string detail_;
  int failures_ = 0;
};

std::vector<double> hk_column(const char* name) {
  return csv::select_column(csv::parse(datasets::hk_pay_csv), std::string(name)).values;
}

std::vector<double> flagged_values(const DetectionReport& r) {
  std::vector<double> out;
  for (std::size_t i : r.flagged_indices()) out.push_back(r.values[i]);
  std::sort(out.begin(), out.end());
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs a shell command and returns (exit status, captured stdout).
std::pair<int, std::string> run(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {status, out};
}

bool ac1() {
  Criterion c("AC1", "toy example exactness");
  const auto t0 = std::chrono::steady_clock::now();
  const Sample s(datasets::contaminated_toy);
  c.near("mean", s.mean(), 22.136, 0.005);
  c.near("sd", s.sd(), 44.160, 0.005);
  const std::array<double, 9> published = {0.545, 0.528, 0.521, 0.509, 0.481, 0.481, 0.462, 1.763, 1.763};
  // Published order runs by deviation of the sorted values.
  std::vector<double> d;
  for (double x : s.values()) d.push_back(std::fabs(x - s.mean()) / s.sd());
  for (std::size_t i = 0; i < 9; ++i) c.near("D_" + std::to_string(i + 1), d[i], published[i], 0.005);
  c.near("c_9", chauvenet_threshold(9), 1.915, 0.005);
  c.near("k_9", chauvenet_coefficient(9), 0.918, 0.005);
  const auto interval = compute_fences(s, method::ChauvenetInterval{});
  c.near("interval lower", interval.lower, -62.430, 0.005);
  c.near("interval upper", interval.upper, 106.702, 0.005);
  const auto ct = compute_fences(s, method::ChauvenetType{});
  c.near("chauvenet_type lower", ct.lower, -3.237, 0.005);
  c.near("chauvenet_type upper", ct.upper, 4.124, 0.005);
  c.holds("interval flags no point", classify(s, interval).n_flagged == 0);
  c.holds("chauvenet_type flags exactly the two 100s",
          flagged_values(classify(s, ct)) == std::vector<double>{100.0, 100.0});
  c.within("runtime seconds", seconds_since(t0), 0.0, 0.5);
  return c.report();
}

bool ac2() {
  Criterion c("AC2", "pay data exactness");
  const Sample junior(hk_column("junior"));
  const Sample senior(hk_column("senior"));
  const double tol = 0.01;

  c.near("junior Q1", junior.q1(), 2.61, tol);
  c.near("junior Q3", junior.q3(), 4.70, tol);
  const auto jt = compute_fences(junior, method::Tukey{});
  c.near("junior tukey lower", jt.lower, -0.53, tol);
  c.near("junior tukey upper", jt.upper, 7.84, tol);
  const auto jc = compute_fences(junior, method::ChauvenetType{});
  c.near("k_18", jc.coefficient_upper, 1.13, tol);
  c.near("junior chauvenet_type lower", jc.lower, 0.25, tol);
  c.near("junior chauvenet_type upper", jc.upper, 7.07, tol);
  const auto ji = compute_fences(junior, method::ChauvenetInterval{});
  c.near("junior interval lower", ji.lower, -1.07, tol);
  c.near("junior interval upper", ji.upper, 8.09, tol);

  c.near("senior Q1", senior.q1(), 2.04, tol);
  c.near("senior Q3", senior.q3(), 4.91, tol);
  const auto st = compute_fences(senior, method::Tukey{});
  c.near("senior tukey lower", st.lower, -2.27, tol);
  c.near("senior tukey upper", st.upper, 9.22, tol);
  const auto sc = compute_fences(senior, method::ChauvenetType{});
  c.near("senior chauvenet_type lower", sc.lower, -1.20, tol);
  c.near("senior chauvenet_type upper", sc.upper, 8.15, tol);
  const auto si = compute_fences(senior, method::ChauvenetInterval{});
  c.near("senior interval lower", si.lower, -3.33, tol);
  c.near("senior interval upper", si.upper, 9.52, tol);

  c.holds("junior chauvenet_type flags the three 0.00 rates",
          flagged_values(classify(junior, jc)) == std::vector<double>{0.0, 0.0, 0.0});
  c.holds("junior tukey flags nothing", classify(junior, jt).n_flagged == 0);
  c.holds("junior interval flags nothing", classify(junior, ji).n_flagged == 0);
  for (const auto* f : {&st, &sc, &si}) {
    c.holds("senior " + method_name(f->method) + " flags only -5.38",
            flagged_values(classify(senior, *f)) == std::vector<double>{-5.38});
  }
  return c.report();
}

bool ac3() {
  Criterion c("AC3", "coefficient landmarks");
  c.near("k_50", chauvenet_coefficient(50), 1.41, 0.005);
  c.near("k_72", chauvenet_coefficient(72), 1.5, 0.005);
  c.near("k_217282", chauvenet_coefficient(217282), 3.0, 0.005);
  bool increasing = true;
  std::size_t where = 0;
  double prev = chauvenet_coefficient(2);
  for (std::size_t n = 3; n <= 1000000; ++n) {
    const double k = chauvenet_coefficient(n);
    if (!(k > prev)) {
      increasing = false;
      where = n;
      break;
    }
    prev = k;
  }
  c.holds("k_n strictly increasing on [2, 1e6]" + (increasing ? std::string() : " (breaks at n = " + std::to_string(where) + ")"),
          increasing);
  return c.report();
}

bool ac4() {
  Criterion c("AC4", "non-normal coefficients");
  const std::size_t n = 50000;
  const auto chi = non_normal_coefficients(ChiSquareModel{8.02}, n);
  c.near("chi-square k'", chi.lower, 0.94, 0.01);
  c.near("chi-square k''", chi.upper, 5.58, 0.01);
  const auto t = non_normal_coefficients(StudentTModel{8.02}, n);
  c.near("t k'", t.lower, 6.41, 0.01);
  c.near("t k''", t.upper, 6.41, 0.01);
  const auto fc = fences_from_quartiles(5.08, 10.24, n, method::ChauvenetNonNormal{Family::chi_square, ChiSquareModel{8.02}});
  c.near("chi-square lower fence", fc.lower, 0.20, 0.02);
  c.near("chi-square upper fence", fc.upper, 39.02, 0.02);
  const auto ft = fences_from_quartiles(-0.70, 0.71, n, method::ChauvenetNonNormal{Family::student_t, StudentTModel{8.02}});
  c.near("t lower fence", ft.lower, -9.77, 0.02);
  c.near("t upper fence", ft.upper, 9.78, 0.02);
  return c.report();
}

bool ac5() {
  Criterion c("AC5", "Monte Carlo rates");
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n : {500u, 5000u, 50000u}) {
    SimConfig config;
    config.n = n;
    config.replicates = 1000;
    config.methods = {method::ChauvenetType{}, method::Tukey{}};
    const auto r = run_simulation(config);
    c.within("n = " + std::to_string(n) + " chauvenet_type mean flags", r.methods[0].false_positives.mean, 0.35, 0.65);
    if (n == 50000) c.within("n = 50000 tukey fraction flagged", r.methods[1].outside_rate.mean, 0.006, 0.008);
  }
  for (std::size_t n : {500u, 5000u}) {
    SimConfig config;
    config.n = n;
    config.replicates = 1000;
    config.contamination = {{5.0, 1}, {6.0, 1}};
    config.methods = {method::ChauvenetType{}};
    const auto r = run_simulation(config);
    c.near("n = " + std::to_string(n) + " contaminated, true positives", r.methods[0].true_positives.mean, 2.0, 0.0);
  }
  c.within("runtime seconds (single thread)", seconds_since(t0), 0.0, 300.0);
  return c.report();
}

bool ac6() {
  Criterion c("AC6", "ordering property");
  struct Case {
    const char* name;
    Generator gen;
    std::optional<Family> family;
  };
  const std::vector<Case> cases = {{"normal", generator::Normal{}, std::nullopt},
                                   {"chi_square(8)", generator::ChiSquare{8.0}, Family::chi_square},
                                   {"student_t(8)", generator::StudentT{8.0}, Family::student_t}};
  for (const auto& k : cases) {
    SimConfig config;
    config.family = k.gen;
    config.n = 50000;
    config.replicates = 100;
    config.methods = {method::Tukey{}, method::ChauvenetType{}};
    if (k.family) config.methods.push_back(method::ChauvenetNonNormal{*k.family, std::nullopt});
    const auto r = run_simulation(config);
    const double tukey = r.methods[0].flagged.mean;
    const double ct = r.methods[1].flagged.mean;
    c.holds(std::string(k.name) + ": tukey " + std::to_string(tukey) + " > chauvenet_type " + std::to_string(ct),
            tukey > ct);
    if (k.family) {
      const double nn = r.methods[2].flagged.mean;
      c.holds(std::string(k.name) + ": non-normal " + std::to_string(nn) + " <= chauvenet_type " + std::to_string(ct),
              nn <= ct);
      if (*k.family == Family::chi_square) c.within("chi_square(8) non-normal mean flags", nn, 0.0, 10.0);
    }
  }
  return c.report();
}

bool ac7() {
  Criterion c("AC7", "interval and Chauvenet-type fences agree at large n");
  const std::size_t n = 1000000;
  const std::size_t replicates = 20;
  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
  std::vector<double> data(n);
  for (std::size_t r = 0; r < replicates; ++r) {
    RandomStream rng(stream_seed(1863, r));
    for (auto& x : data) x = rng.normal();
    const Sample s(data);
    const auto interval = compute_fences(s, method::ChauvenetInterval{});
    const auto ct = compute_fences(s, method::ChauvenetType{});
    lower_ratio += interval.lower / ct.lower;
    upper_ratio += interval.upper / ct.upper;
  }
  c.within("mean lower-endpoint ratio", lower_ratio / replicates, 0.98, 1.02);
  c.within("mean upper-endpoint ratio", upper_ratio / replicates, 0.98, 1.02);
  return c.report();
}

bool ac8() {
  Criterion c("AC8", "quantile numerics");
  std::vector<double> grid;
  for (int i = 0; i < 5000; ++i) grid.push_back((i + 0.5) / 5000.0);
  for (int i = 0; i < 2500; ++i) {
    const double p = std::pow(10.0, -12.0 + 10.0 * i / 2499.0);
    grid.push_back(p);
    grid.push_back(1.0 - p);
  }
  const std::vector<std::pair<std::string, DistributionModel>> models = {
      {"normal(0, 1)", NormalModel{}},       {"gamma(2.5, 1.5)", GammaModel{2.5, 1.5}},
      {"chi_square(8.02)", ChiSquareModel{8.02}}, {"student_t(8.02)", StudentTModel{8.02}}};
  for (const auto& [name, m] : models) {
    double worst = 0.0;
    for (double p : grid) worst = std::max(worst, std::fabs(cdf(m, quantile_of(m, p)) - p));
    c.within(name + " max |cdf(quantile(p)) - p| over " + std::to_string(grid.size()) + " points", worst, 0.0, 1e-9);
  }
  c.near("Phi^-1(0.75)", normal_quantile(0.75), 0.674490, 1e-5);
  return c.report();
}

bool ac9() {
  Criterion c("AC9", "determinism");
  const std::string cli = CHAUBOX_CLI_PATH;
  const std::string sim = cli +
                          " simulate --family normal --n 2000 --replicates 60 --seed 7 "
                          "--method tukey,chauvenet_type --contaminate 5:1 --contaminate 6:1 --format json";
  const auto a = run(sim + " --threads 1");
  const auto b = run(sim + " --threads 1");
  const auto d = run(sim + " --threads 4");
  c.holds("simulate exits zero", a.first == 0 && !a.second.empty());
  c.holds("simulate byte-identical across runs", a.second == b.second);
  c.holds("simulate byte-identical across scheduling (1 vs 4 threads)", a.second == d.second);
  c.holds("seed echoed in output", a.second.find("\"seed\": 7") != std::string::npos);

  const std::string plot = cli + " plot --input builtin:hk_pay --column junior --column senior --method tukey,chauvenet_type";
  const auto p1 = run(plot);
  const auto p2 = run(plot);
  c.holds("plot exits zero", p1.first == 0 && p1.second.find("<svg") != std::string::npos);
  c.holds("plot byte-identical for identical input", p1.second == p2.second);
  return c.report();
}

bool ac10() {
  Criterion c("AC10", "ER/TL guards");
  bool rejections_ok = true;
  bool ordering_ok = true;
  std::size_t inside = 0;
  for (std::size_t n = 0; n <= 5000; ++n) {
    const bool domain = n >= 9 && n <= 497 && (n - 1) % 4 == 0;
    if (domain) {
      ++inside;
      if (!(tl_coefficient(n) > er_coefficient(n))) ordering_ok = false;
      continue;
    }
    for (auto f : {std::function<double(std::size_t)>(er_coefficient), std::function<double(std::size_t)>(tl_coefficient)}) {
      try {
        f(n);
        rejections_ok = false;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::outside_validity_domain) rejections_ok = false;
      }
    }
  }
  c.holds("every n in [0, 5000] off the 4m+1 grid rejected with outside_validity_domain", rejections_ok);
  c.holds("tl > er at all " + std::to_string(inside) + " grid points", ordering_ok && inside == 123);
  return c.report();
}

}  // namespace

int main() {
  int failed = 0;
  for (auto f : {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10}) failed += f() ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
