#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigmatch/data_graph.hpp"
#include "rigmatch/pattern_query.hpp"
#include "rigmatch/reach_index.hpp"

namespace rigmatch {

// Structural test for one query edge: adjacency for direct edges, the
// reachability oracle for reachability edges. Label feasibility is the
// caller's duty (candidates come from label match sets already).
class EdgeMatchTester {
 public:
  EdgeMatchTester(const DataGraph& g, const ReachIndex& ix) : g_(&g), ix_(&ix) {}

  bool matches(const QueryEdge& e, NodeId u, NodeId v) const {
    if (e.kind == EdgeKind::direct) return g_->adjacency(u, Direction::forward).contains(v);
    return ix_->reaches(u, v);
  }

 private:
  const DataGraph* g_;
  const ReachIndex* ix_;
};

// Knobs for the convergence optimizations. They change work, never results:
// with the same pass cap the returned sets are identical under any toggle
// combination.
struct SimOptions {
  std::optional<std::uint32_t> pass_cap;  // nullopt: run to the fixpoint
  bool dirty_flags = true;
  bool witness_index = true;
  bool batch_direct = true;
  bool dag_early_termination = true;
};

// The FB array: per query node, the surviving candidate set.
struct FBRelation {
  std::vector<NodeSet> sets;
  std::uint32_t pass_count = 0;
  bool exact = false;

  bool any_empty() const {
    for (const NodeSet& s : sets)
      if (s.empty()) return true;
    return false;
  }
};

// ms(q) = inverted list of label(q), per qid.
std::vector<NodeSet> match_sets(const PatternQuery& q, const DataGraph& g);

// Fixpoint over forwardPrune/backwardPrune sweeps, edges visited in ascending
// (tail, head) order.
FBRelation fb_sim_bas(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                      const SimOptions& options = {});

// Forward-only (conditions 1+2) and backward-only (conditions 1+3) largest
// relations; diagnostics and fixture reproduction.
FBRelation forward_sim_only(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                            const SimOptions& options = {});
FBRelation backward_sim_only(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                             const SimOptions& options = {});

// Per pass one reverse-topological forward sweep then one topological backward
// sweep. Requires an acyclic query (throws std::invalid_argument otherwise);
// tree-shaped queries finish in a single pass.
FBRelation fb_sim_dag(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                      const SimOptions& options = {});

// Dag + delta: delegates to fb_sim_dag for acyclic queries; otherwise
// alternates dag sweeps on the acyclic part with basic sweeps on the back
// edges until the combination stabilizes.
FBRelation fb_sim(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                  const SimOptions& options = {});

// DFS edge classification from the lowest qid: removing back_edges leaves an
// acyclic subquery.
struct DagDecomposition {
  std::vector<QueryEdge> dag_edges;
  std::vector<QueryEdge> back_edges;
  std::vector<std::uint32_t> topo_order;  // valid for dag_edges
};
DagDecomposition decompose_dag(const PatternQuery& q);

// candidates ∩ (union of adjacency(v, dir) over v in frontier): the batched
// direct-connectivity check.
NodeSet batch_direct_check(const NodeSet& candidates, const NodeSet& frontier, Direction dir,
                           const DataGraph& g);

}  // namespace rigmatch
