#include "coext/structure.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace coext {

namespace {

bool insert_sorted(NodeSet& set, NodeId v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it != set.end() && *it == v) return false;
  set.insert(it, v);
  return true;
}

}  // namespace

MemStructure::MemStructure(std::size_t n) : members_(n), containers_(n) {}

MemStructure::MemStructure(std::size_t n, std::span<const Edge> edges) : MemStructure(n) {
  for (const auto& e : edges) add_edge(e.member, e.container);
}

void MemStructure::check(NodeId x) const {
  if (x >= members_.size())
    throw std::out_of_range("node " + std::to_string(x) + " out of range (" + std::to_string(members_.size()) +
                            " nodes)");
}

NodeId MemStructure::add_node(std::string label) {
  const auto id = static_cast<NodeId>(members_.size());
  members_.emplace_back();
  containers_.emplace_back();
  if (!label.empty() || !labels_.empty()) {
    labels_.resize(members_.size());
    labels_.back() = std::move(label);
  }
  return id;
}

void MemStructure::add_edge(NodeId member, NodeId container) {
  check(member);
  check(container);
  if (insert_sorted(members_[container], member)) {
    insert_sorted(containers_[member], container);
    ++edge_count_;
  }
}

bool MemStructure::has_edge(NodeId member, NodeId container) const {
  check(member);
  check(container);
  return std::binary_search(members_[container].begin(), members_[container].end(), member);
}

const NodeSet& MemStructure::members(NodeId x) const {
  check(x);
  return members_[x];
}

const NodeSet& MemStructure::containers(NodeId x) const {
  check(x);
  return containers_[x];
}

std::vector<Edge> MemStructure::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId z = 0; z < containers_.size(); ++z)
    for (NodeId x : containers_[z]) out.push_back({z, x});
  return out;
}

const std::string& MemStructure::label(NodeId x) const {
  static const std::string none;
  check(x);
  return x < labels_.size() ? labels_[x] : none;
}

void MemStructure::set_label(NodeId x, std::string label) {
  check(x);
  if (labels_.size() < members_.size()) labels_.resize(members_.size());
  labels_[x] = std::move(label);
}

// ---------------------------------------------------------------------------

StructureFormatError::StructureFormatError(std::size_t line, const std::string& msg)
    : std::runtime_error("structure line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::size_t parse_number(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw StructureFormatError(line, "expected a decimal number, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

MemStructure parse_structure(std::string_view text) {
  MemStructure s;
  bool have_nodes = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;

    if (toks[0] == "nodes") {
      if (have_nodes) throw StructureFormatError(line_no, "duplicate 'nodes' line");
      if (toks.size() != 2) throw StructureFormatError(line_no, "usage: nodes N");
      s = MemStructure(parse_number(toks[1], line_no));
      have_nodes = true;
      continue;
    }
    if (!have_nodes) throw StructureFormatError(line_no, "'nodes N' must come first");
    try {
      if (toks[0] == "mem") {
        if (toks.size() != 3) throw StructureFormatError(line_no, "usage: mem Z X");
        s.add_edge(static_cast<NodeId>(parse_number(toks[1], line_no)),
                   static_cast<NodeId>(parse_number(toks[2], line_no)));
      } else if (toks[0] == "label") {
        if (toks.size() < 3) throw StructureFormatError(line_no, "usage: label X name");
        const auto x = static_cast<NodeId>(parse_number(toks[1], line_no));
        const std::size_t from = static_cast<std::size_t>(toks[2].data() - line.data());
        std::string_view name = line.substr(from);
        while (!name.empty() && (name.back() == ' ' || name.back() == '\t' || name.back() == '\r'))
          name.remove_suffix(1);
        s.set_label(x, std::string(name));
      } else {
        throw StructureFormatError(line_no, "unknown directive '" + std::string(toks[0]) + "'");
      }
    } catch (const std::out_of_range& e) {
      throw StructureFormatError(line_no, e.what());
    }
  }
  if (!have_nodes) throw StructureFormatError(line_no, "missing 'nodes N' line");
  return s;
}

MemStructure read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open structure file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string to_text(const MemStructure& s) {
  std::string out = "nodes " + std::to_string(s.size()) + "\n";
  for (const auto& e : s.edges())
    out += "mem " + std::to_string(e.member) + " " + std::to_string(e.container) + "\n";
  if (s.has_labels())
    for (NodeId x = 0; x < s.size(); ++x)
      if (!s.label(x).empty()) out += "label " + std::to_string(x) + " " + s.label(x) + "\n";
  return out;
}

std::string brief(const MemStructure& s) {
  std::string out = "<" + std::to_string(s.size()) + ";";
  for (const auto& e : s.edges()) out += " " + std::to_string(e.member) + "->" + std::to_string(e.container);
  out += ">";
  return out;
}

}  // namespace coext
