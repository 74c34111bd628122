#include "rigmatch/double_sim.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace rigmatch {

std::vector<NodeSet> match_sets(const PatternQuery& q, const DataGraph& g) {
  std::vector<NodeSet> ms;
  ms.reserve(q.num_nodes());
  for (const QueryNode& node : q.nodes()) ms.push_back(g.inverted_list(node.label));
  return ms;
}

NodeSet batch_direct_check(const NodeSet& candidates, const NodeSet& frontier, Direction dir,
                           const DataGraph& g) {
  if (candidates.empty() || frontier.empty()) return NodeSet();
  NodeSet reachable_in_one;
  frontier.for_each([&](NodeId v) { reachable_in_one |= g.adjacency(v, dir); });
  return candidates & reachable_in_one;
}

namespace {

struct EdgeIndexDecomposition {
  std::vector<std::uint32_t> dag_edges;
  std::vector<std::uint32_t> back_edges;
  std::vector<std::uint32_t> topo_order;
};

// DFS from the lowest qid; an edge into a gray (in-progress) node is a back
// edge, everything else stays in the dag part.
EdgeIndexDecomposition decompose_indices(const PatternQuery& q) {
  const std::size_t n = q.num_nodes();
  const auto& edges = q.edges();
  EdgeIndexDecomposition out;
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  struct Frame {
    std::uint32_t v;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    color[root] = kGray;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto out_edges = q.out_edges(f.v);
      if (f.next == out_edges.size()) {
        color[f.v] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::uint32_t ei = out_edges[f.next++];
      const std::uint32_t w = edges[ei].head;
      if (color[w] == kGray) {
        out.back_edges.push_back(ei);
      } else {
        out.dag_edges.push_back(ei);
        if (color[w] == kWhite) {
          color[w] = kGray;
          stack.push_back({w, 0});
        }
      }
    }
  }
  std::sort(out.dag_edges.begin(), out.dag_edges.end());
  std::sort(out.back_edges.begin(), out.back_edges.end());

  // Kahn over the dag part, ascending tie-break.
  std::vector<std::uint32_t> indeg(n, 0);
  for (std::uint32_t ei : out.dag_edges) ++indeg[edges[ei].head];
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<std::vector<std::uint32_t>> dag_out(n);
  for (std::uint32_t ei : out.dag_edges) dag_out[edges[ei].tail].push_back(ei);
  while (!ready.empty()) {
    const std::uint32_t v = ready.top();
    ready.pop();
    out.topo_order.push_back(v);
    for (std::uint32_t ei : dag_out[v])
      if (--indeg[edges[ei].head] == 0) ready.push(edges[ei].head);
  }
  assert(out.topo_order.size() == n);
  return out;
}

// Shared sweep machinery for the bas/dag/dag+delta variants. Candidate sets
// only ever shrink; every deletion is certified against the current sets, so
// any stopping point is a sound superset of the fixpoint.
class SimEngine {
 public:
  SimEngine(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
            const SimOptions& options)
      : q_(q),
        g_(g),
        ix_(ix),
        opts_(options),
        fb_(match_sets(q, g)),
        truncate_(options.dag_early_termination && g.is_dag()),
        version_(q.num_nodes(), 1),
        seen_fwd_(q.edges().size(), 0),
        seen_bwd_(q.edges().size(), 0) {
    if (opts_.witness_index) {
      wit_fwd_.resize(q.edges().size());
      wit_bwd_.resize(q.edges().size());
    }
    emptied_ = std::any_of(fb_.begin(), fb_.end(), [](const NodeSet& s) { return s.empty(); });
  }

  bool emptied() const { return emptied_; }

  // Pruning of FB(tail) against witnesses in FB(head). Returns true when a
  // node was removed.
  bool forward_prune(std::uint32_t ei) {
    const QueryEdge& e = q_.edges()[ei];
    if (opts_.dirty_flags && seen_fwd_[ei] == version_[e.head]) return false;
    bool changed = false;
    if (e.kind == EdgeKind::direct && opts_.batch_direct) {
      NodeSet next = batch_direct_check(fb_[e.tail], fb_[e.head], Direction::backward, g_);
      changed = next.size() != fb_[e.tail].size();
      if (changed) fb_[e.tail] = std::move(next);
    } else {
      changed = prune_loop(ei, e.tail, e.head, /*forward=*/true);
    }
    seen_fwd_[ei] = version_[e.head];
    if (changed) note_change(e.tail);
    return changed;
  }

  bool backward_prune(std::uint32_t ei) {
    const QueryEdge& e = q_.edges()[ei];
    if (opts_.dirty_flags && seen_bwd_[ei] == version_[e.tail]) return false;
    bool changed = false;
    if (e.kind == EdgeKind::direct && opts_.batch_direct) {
      NodeSet next = batch_direct_check(fb_[e.head], fb_[e.tail], Direction::forward, g_);
      changed = next.size() != fb_[e.head].size();
      if (changed) fb_[e.head] = std::move(next);
    } else {
      changed = prune_loop(ei, e.head, e.tail, /*forward=*/false);
    }
    seen_bwd_[ei] = version_[e.tail];
    if (changed) note_change(e.head);
    return changed;
  }

  FBRelation finish(std::uint32_t passes, bool exact) {
    FBRelation r;
    r.pass_count = passes;
    if (emptied_) {
      // A connected query with one empty set forces the whole relation empty.
      r.sets.assign(q_.num_nodes(), NodeSet());
      r.exact = true;
      return r;
    }
    r.sets = std::move(fb_);
    r.exact = exact;
    return r;
  }

 private:
  void note_change(std::uint32_t qid) {
    ++version_[qid];
    if (fb_[qid].empty()) emptied_ = true;
  }

  bool prune_loop(std::uint32_t ei, std::uint32_t cand_q, std::uint32_t wit_q, bool forward) {
    const QueryEdge& e = q_.edges()[ei];
    const NodeSet& witnesses = fb_[wit_q];
    auto& wit_map = opts_.witness_index ? (forward ? wit_fwd_[ei] : wit_bwd_[ei]) : dummy_map_;
    std::vector<NodeId> removals;
    fb_[cand_q].for_each([&](NodeId v) {
      if (opts_.witness_index) {
        auto it = wit_map.find(v);
        if (it != wit_map.end() && witnesses.contains(it->second)) return;
      }
      std::optional<NodeId> w = forward ? find_forward_witness(e, v, witnesses)
                                        : find_backward_witness(e, v, witnesses);
      if (w) {
        if (opts_.witness_index) wit_map[v] = *w;
        return;
      }
      removals.push_back(v);
    });
    for (NodeId v : removals) fb_[cand_q].remove(v);
    return !removals.empty();
  }

  std::optional<NodeId> find_forward_witness(const QueryEdge& e, NodeId v,
                                             const NodeSet& witnesses) const {
    if (e.kind == EdgeKind::direct)
      return NodeSet::first_common(g_.adjacency(v, Direction::forward), witnesses);
    const std::uint32_t v_end = truncate_ ? ix_.interval_of(v).end : 0;
    for (NodeId w : witnesses) {
      if (truncate_ && v_end < ix_.interval_of(w).begin) break;
      if (ix_.reaches(v, w)) return w;
    }
    return std::nullopt;
  }

  std::optional<NodeId> find_backward_witness(const QueryEdge& e, NodeId v,
                                              const NodeSet& witnesses) const {
    if (e.kind == EdgeKind::direct)
      return NodeSet::first_common(g_.adjacency(v, Direction::backward), witnesses);
    for (NodeId w : witnesses) {
      if (ix_.reaches(w, v)) return w;
    }
    return std::nullopt;
  }

  const PatternQuery& q_;
  const DataGraph& g_;
  const ReachIndex& ix_;
  SimOptions opts_;
  std::vector<NodeSet> fb_;
  bool truncate_;
  bool emptied_ = false;
  // Per-qid change counter and per-edge-direction last examined counter; a
  // sweep is skipped when the witness side is untouched since its last run.
  std::vector<std::uint64_t> version_;
  std::vector<std::uint64_t> seen_fwd_, seen_bwd_;
  std::vector<std::unordered_map<NodeId, NodeId>> wit_fwd_, wit_bwd_;
  std::unordered_map<NodeId, NodeId> dummy_map_;
};

enum class SweepSet { forward_only, backward_only, both };

FBRelation run_bas(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                   const SimOptions& options, SweepSet sweeps) {
  SimEngine engine(q, g, ix, options);
  std::uint32_t passes = 0;
  bool exact = false;
  const std::size_t m = q.edges().size();
  while (!engine.emptied()) {
    if (options.pass_cap && passes == *options.pass_cap) break;
    ++passes;
    bool changed = false;
    if (sweeps != SweepSet::backward_only)
      for (std::uint32_t ei = 0; ei < m && !engine.emptied(); ++ei)
        changed |= engine.forward_prune(ei);
    if (sweeps != SweepSet::forward_only)
      for (std::uint32_t ei = 0; ei < m && !engine.emptied(); ++ei)
        changed |= engine.backward_prune(ei);
    if (!changed) {
      exact = true;
      break;
    }
  }
  return engine.finish(passes, exact);
}

// Single-pass stabilization holds for rooted out-trees only: with two parents
// a backward removal triggered by one incoming edge can strip the forward
// witness another parent relied on, which needs a second pass.
bool is_rooted_tree(const PatternQuery& q) {
  if (q.edges().size() + 1 != q.num_nodes()) return false;
  std::vector<std::uint8_t> indeg(q.num_nodes(), 0);
  for (const QueryEdge& e : q.edges())
    if (++indeg[e.head] > 1) return false;
  return true;  // n-1 edges, connected, every indegree <= 1
}

}  // namespace

FBRelation fb_sim_bas(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                      const SimOptions& options) {
  return run_bas(q, g, ix, options, SweepSet::both);
}

FBRelation forward_sim_only(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                            const SimOptions& options) {
  return run_bas(q, g, ix, options, SweepSet::forward_only);
}

FBRelation backward_sim_only(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                             const SimOptions& options) {
  return run_bas(q, g, ix, options, SweepSet::backward_only);
}

FBRelation fb_sim_dag(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                      const SimOptions& options) {
  if (!q.is_dag()) throw std::invalid_argument("fb_sim_dag requires an acyclic query");
  SimEngine engine(q, g, ix, options);
  const std::vector<std::uint32_t> topo = q.topological_order();
  const bool tree = is_rooted_tree(q);

  std::uint32_t passes = 0;
  bool exact = false;
  while (!engine.emptied()) {
    if (options.pass_cap && passes == *options.pass_cap) break;
    ++passes;
    bool changed = false;
    for (auto it = topo.rbegin(); it != topo.rend() && !engine.emptied(); ++it)
      for (std::uint32_t ei : q.out_edges(*it)) changed |= engine.forward_prune(ei);
    for (auto it = topo.begin(); it != topo.end() && !engine.emptied(); ++it)
      for (std::uint32_t ei : q.in_edges(*it)) changed |= engine.backward_prune(ei);
    if (tree) {
      // One bottom-up plus one top-down traversal stabilizes tree patterns.
      exact = true;
      break;
    }
    if (!changed) {
      exact = true;
      break;
    }
  }
  return engine.finish(passes, exact);
}

FBRelation fb_sim(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                  const SimOptions& options) {
  if (q.is_dag()) return fb_sim_dag(q, g, ix, options);

  const EdgeIndexDecomposition dec = decompose_indices(q);
  SimEngine engine(q, g, ix, options);
  std::vector<std::vector<std::uint32_t>> dag_out(q.num_nodes()), dag_in(q.num_nodes());
  for (std::uint32_t ei : dec.dag_edges) {
    dag_out[q.edges()[ei].tail].push_back(ei);
    dag_in[q.edges()[ei].head].push_back(ei);
  }

  std::uint32_t passes = 0;
  bool exact = false;
  while (!engine.emptied()) {
    if (options.pass_cap && passes == *options.pass_cap) break;
    ++passes;
    bool outer_changed = false;
    // Dag sweeps on the acyclic part until it stabilizes.
    while (!engine.emptied()) {
      bool changed = false;
      for (auto it = dec.topo_order.rbegin(); it != dec.topo_order.rend() && !engine.emptied();
           ++it)
        for (std::uint32_t ei : dag_out[*it]) changed |= engine.forward_prune(ei);
      for (auto it = dec.topo_order.begin(); it != dec.topo_order.end() && !engine.emptied();
           ++it)
        for (std::uint32_t ei : dag_in[*it]) changed |= engine.backward_prune(ei);
      outer_changed |= changed;
      if (!changed) break;
    }
    // Basic sweeps on the back edges until they stabilize.
    while (!engine.emptied()) {
      bool changed = false;
      for (std::uint32_t ei : dec.back_edges) {
        if (engine.emptied()) break;
        changed |= engine.forward_prune(ei);
      }
      for (std::uint32_t ei : dec.back_edges) {
        if (engine.emptied()) break;
        changed |= engine.backward_prune(ei);
      }
      outer_changed |= changed;
      if (!changed) break;
    }
    if (!outer_changed) {
      exact = true;
      break;
    }
  }
  return engine.finish(passes, exact);
}

DagDecomposition decompose_dag(const PatternQuery& q) {
  const EdgeIndexDecomposition dec = decompose_indices(q);
  DagDecomposition out;
  out.dag_edges.reserve(dec.dag_edges.size());
  out.back_edges.reserve(dec.back_edges.size());
  for (std::uint32_t ei : dec.dag_edges) out.dag_edges.push_back(q.edges()[ei]);
  for (std::uint32_t ei : dec.back_edges) out.back_edges.push_back(q.edges()[ei]);
  out.topo_order = dec.topo_order;
  return out;
}

}  // namespace rigmatch
