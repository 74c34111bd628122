#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rigmatch/node_set.hpp"

namespace rigmatch {

using Label = std::uint32_t;

enum class Direction { forward, backward };

// Immutable node-labeled directed graph with adjacency in both directions and
// per-label inverted lists. Duplicate edges are deduplicated at load;
// self-loops are kept. When the input is acyclic, nodes are renumbered so that
// ascending id order equals DFS discovery order (this is what makes the
// interval-based early termination a plain ascending scan); the original ids
// are preserved through external_id()/internal_id() and used for all I/O.
//
// Text format (line oriented, '#' starts a comment, blank lines ignored):
//   t <num_nodes> <num_edges>
//   v <id> <label>          (ids 0..n-1, each exactly once, before any edge)
//   e <src> <dst>
class DataGraph {
 public:
  static DataGraph load(std::istream& in);
  static DataGraph load_text(std::string_view text);
  void serialize(std::ostream& out) const;

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::size_t num_labels() const { return label_names_.size(); }

  Label label_of(NodeId v) const;
  const std::string& label_name(Label l) const { return label_names_[l]; }
  std::optional<Label> find_label(std::string_view name) const;

  const NodeSet& inverted_list(Label l) const { return inverted_[l]; }
  // Empty set when the label does not occur in the graph.
  const NodeSet& inverted_list(std::string_view name) const;

  const NodeSet& adjacency(NodeId v, Direction dir) const;

  bool is_dag() const { return is_dag_; }
  NodeId external_id(NodeId internal) const;
  NodeId internal_id(NodeId external) const;

 private:
  void check_node(NodeId v) const;

  std::vector<Label> labels_;
  std::vector<NodeSet> fwd_;
  std::vector<NodeSet> bwd_;
  std::vector<NodeSet> inverted_;
  std::vector<std::string> label_names_;
  std::unordered_map<std::string, Label> label_ids_;
  std::vector<NodeId> external_;  // internal -> external
  std::vector<NodeId> internal_;  // external -> internal
  std::size_t num_edges_ = 0;
  bool is_dag_ = false;
};

}  // namespace rigmatch
