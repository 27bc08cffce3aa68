#ifndef COEXT_REPORT_HPP
#define COEXT_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coext/fol.hpp"
#include "coext/structure.hpp"

namespace coext {

using Binding = std::pair<VarName, NodeId>;

// A failed instance: `formula` evaluates to false on `structure` under
// `assignment`.  Clauses that are not formula evaluations (copy relation
// conditions, extension comparisons) leave `formula` empty and explain
// themselves in `detail`.
struct Counterexample {
  MemStructure structure;
  std::string formula;
  std::vector<Binding> assignment;
  std::string clause;
  std::string detail;
};

struct Report {
  std::string check;
  std::size_t structures = 0;
  std::size_t instances = 0;
  // Instances whose antecedent was realized; equals `instances` for
  // unconditional checks.
  std::size_t realized = 0;
  bool passed = true;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> notes;

  explicit Report(std::string name = {}) : check(std::move(name)) {}

  // Keeps the first counterexample.
  void fail(Counterexample c);
  // Adds counts; a failure in `other` wins only if this report has none.
  void absorb(const Report& other);
};

std::string to_text(const Report& r);
// One JSON object per line; empty when the report passed.
std::string to_record(const Report& r);

struct ReplayRecord {
  std::string check;
  std::string clause;
  MemStructure structure;
  std::string formula;
  std::vector<Binding> assignment;
};

ReplayRecord parse_record(std::string_view json_line);

}  // namespace coext

#endif
