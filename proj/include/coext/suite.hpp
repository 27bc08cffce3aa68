// The acceptance run: nine criteria, each reduced to one pass/fail line.
// Shared by `coext suite` and the acceptance test so both print the same
// thing.  Every random draw comes from fixed seeds.

#ifndef COEXT_SUITE_HPP
#define COEXT_SUITE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coext/verify.hpp"

namespace coext {

inline constexpr std::uint64_t kSuiteSeed = 20240611;
inline constexpr int kCriteria = 9;

struct SuiteOptions {
  std::size_t jobs = 1;
  std::uint64_t seed = kSuiteSeed;
  std::vector<int> only;  // empty: all criteria
};

struct CriterionResult {
  CriterionResult(int id_ = 0, std::string name_ = {}) : id(id_), name(std::move(name_)) {}

  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  std::vector<Report> reports;
  std::vector<std::string> notes;
  double seconds = 0;
};

// "criterion N PASS|FAIL name: summary (t s)".
std::string format_line(const CriterionResult& r);

std::vector<CriterionResult> run_suite(const SuiteOptions& opts,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

// A random formula of connective depth <= depth over vars, drawing atoms
// from preds.  Quantifiers bind one of vars.
Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<VarName>& vars,
                       const std::vector<Pred>& preds);

// Replaces in* by in and =* by =.
Formula unstar(const Formula& f);

}  // namespace coext

#endif
