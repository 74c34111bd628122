#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rigmatch {

enum class EdgeKind : std::uint8_t { direct, reachability };

struct QueryNode {
  std::uint32_t qid = 0;
  std::string label;
};

struct QueryEdge {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  EdgeKind kind = EdgeKind::direct;

  friend bool operator==(const QueryEdge&, const QueryEdge&) = default;
  friend bool operator<(const QueryEdge& a, const QueryEdge& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.head != b.head) return a.head < b.head;
    return a.kind < b.kind;
  }
};

// Hybrid graph pattern: a connected directed graph whose edges are either
// direct (edge-to-edge) or reachability (edge-to-path). Edges are kept sorted
// by (tail, head, kind), which fixes every edge visit order downstream.
//
// Text format: all node lines, then all edge lines ('#' comments allowed):
//   n <qid> <label>
//   d <tail> <head>     direct edge
//   r <tail> <head>     reachability edge
class PatternQuery {
 public:
  // Validates qid density, self-loop/duplicate-pair rules and connectivity.
  // Queries beyond kSoftNodeLimit parse with a warning on `warnings`
  // (stderr when null).
  static PatternQuery parse(std::istream& in, std::ostream* warnings = nullptr);
  static PatternQuery parse_text(std::string_view text, std::ostream* warnings = nullptr);
  static PatternQuery make(std::vector<QueryNode> nodes, std::vector<QueryEdge> edges);
  // Skips validation; for controlled construction in tests and fault hooks.
  static PatternQuery make_unchecked(std::vector<QueryNode> nodes, std::vector<QueryEdge> edges);

  static constexpr std::size_t kSoftNodeLimit = 64;

  std::size_t num_nodes() const { return nodes_.size(); }
  const std::vector<QueryNode>& nodes() const { return nodes_; }
  const std::vector<QueryEdge>& edges() const { return edges_; }
  const std::string& label_of(std::uint32_t qid) const { return nodes_[qid].label; }

  bool is_dag() const { return is_dag_; }
  // Kahn order with ascending-qid tie-breaking; throws std::logic_error on a
  // cyclic query.
  std::vector<std::uint32_t> topological_order() const;

  // Indices into edges() with the given node as tail (out) / head (in).
  std::span<const std::uint32_t> out_edges(std::uint32_t qid) const;
  std::span<const std::uint32_t> in_edges(std::uint32_t qid) const;
  // Distinct neighbor qids ignoring direction, ascending.
  std::span<const std::uint32_t> undirected_neighbors(std::uint32_t qid) const;

  // Adds a reachability edge (x, y) for every x != y with a nonempty path from
  // x to y; original edges are retained.
  PatternQuery transitive_closure() const;
  // Drops every reachability edge whose endpoints stay connected by some other
  // path; reachability edges are visited in ascending (tail, head) order, so
  // the (possibly non-minimum) result on cyclic queries is deterministic.
  PatternQuery transitive_reduction() const;

 private:
  void build_topology();

  std::vector<QueryNode> nodes_;
  std::vector<QueryEdge> edges_;
  std::vector<std::uint32_t> out_idx_, out_off_;
  std::vector<std::uint32_t> in_idx_, in_off_;
  std::vector<std::uint32_t> undir_, undir_off_;
  bool is_dag_ = true;
};

}  // namespace rigmatch
