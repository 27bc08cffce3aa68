// One line per acceptance criterion; exit status 1 if any fails.

#include <iostream>
#include <thread>

#include "coext/suite.hpp"

int main() {
  coext::SuiteOptions opts;
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  bool ok = true;
  coext::run_suite(opts, [&](const coext::CriterionResult& c) {
    ok = ok && c.passed;
    std::cout << coext::format_line(c) << "\n";
    for (const auto& n : c.notes) std::cout << "  note: " << n << "\n";
    for (const auto& r : c.reports)
      if (!r.passed) std::cout << coext::to_text(r);
    std::cout.flush();
  });
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
  return ok ? 0 : 1;
}
