#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rigmatch/double_sim.hpp"

namespace rigmatch {

enum class RigMode { refined, match };
enum class SimAlgo { bas, dag, aut };

// k-partite candidate-occurrence graph: one node set per query node, one
// adjacency relation per query edge, stored as per-source rows in both
// directions so the enumerator's multi-way intersections are plain set ops.
class RuntimeIndexGraph {
 public:
  struct EdgeAdj {
    std::unordered_map<NodeId, NodeSet> fwd;  // tail node -> matching heads
    std::unordered_map<NodeId, NodeSet> bwd;  // head node -> matching tails
  };

  const PatternQuery& query() const { return *query_; }
  const NodeSet& cos(std::uint32_t qid) const { return cos_[qid]; }
  const std::vector<NodeSet>& cos_sets() const { return cos_; }

  // Whole-RIG emptiness: any empty candidate set empties the answer, and the
  // builder collapses such a RIG to the distinguished empty one.
  bool empty() const { return empty_; }

  // nullptr when the node has no row for that edge.
  const NodeSet* row(std::size_t edge_index, NodeId v, Direction dir) const;
  const EdgeAdj& edge_adj(std::size_t edge_index) const { return adj_[edge_index]; }

  std::size_t num_nodes() const;  // sum of cos cardinalities
  std::size_t num_edges() const { return edge_count_; }

  std::uint32_t sim_passes() const { return sim_passes_; }
  bool sim_exact() const { return sim_exact_; }

 private:
  friend RuntimeIndexGraph build_rig_from_cos(const PatternQuery&, const DataGraph&,
                                              const ReachIndex&, std::vector<NodeSet>, bool,
                                              bool);
  friend RuntimeIndexGraph build_rig(const PatternQuery&, const DataGraph&, const ReachIndex&,
                                     RigMode, const SimOptions&, SimAlgo);
  const PatternQuery* query_ = nullptr;
  std::vector<NodeSet> cos_;
  std::vector<EdgeAdj> adj_;
  std::size_t edge_count_ = 0;
  bool empty_ = true;
  std::uint32_t sim_passes_ = 0;
  bool sim_exact_ = true;
};

// Select phase (double simulation in refined mode, raw match sets in match
// mode) followed by the expand phase.
RuntimeIndexGraph build_rig(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                            RigMode mode, const SimOptions& sim_options = {},
                            SimAlgo algo = SimAlgo::aut);

// Expand phase over externally supplied candidate sets. `trim` removes nodes
// left without a row for some incident query edge (refined mode); match mode
// keeps rows exactly equal to the edge match sets.
RuntimeIndexGraph build_rig_from_cos(const PatternQuery& q, const DataGraph& g,
                                     const ReachIndex& ix, std::vector<NodeSet> cos, bool trim,
                                     bool dag_early_termination);

// One query edge's rows. For direct edges each row is a single set
// intersection; for reachability edges on acyclic data the scan over head
// candidates stops at the first v with tail.end < v.begin.
RuntimeIndexGraph::EdgeAdj expand_edge(const QueryEdge& e, const NodeSet& tail_cos,
                                       const NodeSet& head_cos, const DataGraph& g,
                                       const ReachIndex& ix, bool dag_early_termination);

struct RigStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double ratio = 0.0;  // (nodes + edges) / (|V| + |E|) of the data graph
};
RigStats rig_stats(const RuntimeIndexGraph& rig, const DataGraph& g);

}  // namespace rigmatch
