// Finite membership structures.
//
// Nodes are 0..n-1.  An edge (z, x) means z is a member of x; everything in
// this library states edges in that (member, container) order.  Nothing
// forces extensionality: two nodes may have identical member lists.

#ifndef COEXT_STRUCTURE_HPP
#define COEXT_STRUCTURE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coext {

using NodeId = std::uint32_t;

// Sorted, duplicate-free node list.
using NodeSet = std::vector<NodeId>;

struct Edge {
  NodeId member;
  NodeId container;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class MemStructure {
 public:
  MemStructure() = default;
  explicit MemStructure(std::size_t n);
  MemStructure(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return members_.size(); }

  NodeId add_node(std::string label = {});
  // Idempotent; throws std::out_of_range on bad ids.
  void add_edge(NodeId member, NodeId container);

  bool has_edge(NodeId member, NodeId container) const;
  const NodeSet& members(NodeId x) const;
  const NodeSet& containers(NodeId x) const;
  std::size_t edge_count() const noexcept { return edge_count_; }
  // Sorted by (member, container).
  std::vector<Edge> edges() const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::string& label(NodeId x) const;
  void set_label(NodeId x, std::string label);

  // Labels do not take part in comparison.
  friend bool operator==(const MemStructure& a, const MemStructure& b) {
    return a.members_ == b.members_;
  }

 private:
  void check(NodeId x) const;

  std::vector<NodeSet> members_;
  std::vector<NodeSet> containers_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

class StructureFormatError : public std::runtime_error {
 public:
  StructureFormatError(std::size_t line, const std::string& msg);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Text format:
//   nodes N
//   mem Z X        # Z is a member of X
//   label X name
// Blank lines and '#' comments are ignored.
MemStructure parse_structure(std::string_view text);
MemStructure read_structure_file(const std::string& path);
std::string to_text(const MemStructure& s);

// Compact one-line form used in test names and logs: <3; 0->2 1->2>.
std::string brief(const MemStructure& s);

}  // namespace coext

#endif
