// Fences and flagged years for the bundled pay-adjustment data.

#include <iostream>
#include <string>
#include <vector>

#include "chaubox/chaubox.hpp"

int main() {
  using namespace chaubox;
  const auto table = csv::parse(datasets::hk_pay_csv);
  const std::vector<FenceMethod> methods = {method::Tukey{}, method::ChauvenetType{}, method::ChauvenetInterval{}};

  for (const char* grade : {"junior", "senior"}) {
    const auto column = csv::select_column(table, std::string(grade));
    const Sample sample(column.values);
    std::cout << grade << ": n = " << sample.size() << ", Q1 = " << format_fixed(sample.q1(), 3)
              << ", Q3 = " << format_fixed(sample.q3(), 3) << "\n";

    std::vector<FencePair> fences;
    for (const auto& m : methods) fences.push_back(compute_fences(sample, m));
    std::cout << report::fence_table(fences, sample.size(), 2);

    for (const auto& f : fences) {
      const auto r = classify(sample, f);
      std::cout << "  " << method_name(f.method) << " flags:";
      for (std::size_t i : r.flagged_indices()) {
        std::cout << " " << table.rows[i + 1].fields[0] << " (" << format_fixed(r.values[i], 2) << ")";
      }
      if (r.n_flagged == 0) std::cout << " none";
      std::cout << "\n";
    }
    std::cout << "\n";
  }
}
