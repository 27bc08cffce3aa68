#include "coext/report.hpp"

#include <json.hpp>

namespace coext {

void Report::fail(Counterexample c) {
  if (passed) counterexample = std::move(c);
  passed = false;
}

void Report::absorb(const Report& other) {
  structures += other.structures;
  instances += other.instances;
  realized += other.realized;
  if (!other.passed) {
    if (passed && other.counterexample) counterexample = other.counterexample;
    passed = false;
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string to_text(const Report& r) {
  std::string out = r.check + ": " + (r.passed ? "PASS" : "FAIL") + " (structures " + std::to_string(r.structures) +
                    ", instances " + std::to_string(r.instances) + ", realized " + std::to_string(r.realized) + ")\n";
  for (const auto& n : r.notes) out += "  note: " + n + "\n";
  if (const auto& c = r.counterexample) {
    out += "  counterexample [" + c->clause + "] on " + brief(c->structure) + "\n";
    if (!c->formula.empty()) out += "    formula: " + c->formula + "\n";
    if (!c->assignment.empty()) {
      out += "    assignment:";
      for (const auto& [v, n] : c->assignment) out += " " + v + "=" + std::to_string(n);
      out += "\n";
    }
    if (!c->detail.empty()) out += "    " + c->detail + "\n";
  }
  return out;
}

std::string to_record(const Report& r) {
  if (r.passed || !r.counterexample) return {};
  const auto& c = *r.counterexample;
  nlohmann::json j;
  j["check"] = r.check;
  j["clause"] = c.clause;
  j["structure"] = to_text(c.structure);
  j["formula"] = c.formula;
  j["detail"] = c.detail;
  auto& a = j["assignment"] = nlohmann::json::array();
  for (const auto& [v, n] : c.assignment) a.push_back({v, n});
  return j.dump();
}

ReplayRecord parse_record(std::string_view json_line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad record: ") + e.what());
  }
  ReplayRecord rec;
  rec.check = j.value("check", "");
  rec.clause = j.value("clause", "");
  rec.structure = parse_structure(j.at("structure").get<std::string>());
  rec.formula = j.value("formula", "");
  for (const auto& b : j.at("assignment")) rec.assignment.emplace_back(b.at(0).get<std::string>(), b.at(1).get<NodeId>());
  return rec;
}

}  // namespace coext
