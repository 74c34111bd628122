#include "rigmatch/rig.hpp"

#include <algorithm>
#include <deque>

namespace rigmatch {

const NodeSet* RuntimeIndexGraph::row(std::size_t edge_index, NodeId v, Direction dir) const {
  const EdgeAdj& adj = adj_[edge_index];
  const auto& map = dir == Direction::forward ? adj.fwd : adj.bwd;
  auto it = map.find(v);
  return it == map.end() ? nullptr : &it->second;
}

std::size_t RuntimeIndexGraph::num_nodes() const {
  std::size_t total = 0;
  for (const NodeSet& s : cos_) total += s.size();
  return total;
}

RuntimeIndexGraph::EdgeAdj expand_edge(const QueryEdge& e, const NodeSet& tail_cos,
                                       const NodeSet& head_cos, const DataGraph& g,
                                       const ReachIndex& ix, bool dag_early_termination) {
  RuntimeIndexGraph::EdgeAdj adj;
  const bool truncate = dag_early_termination && g.is_dag();
  tail_cos.for_each([&](NodeId v) {
    NodeSet row;
    if (e.kind == EdgeKind::direct) {
      row = g.adjacency(v, Direction::forward) & head_cos;
    } else {
      const std::uint32_t v_end = truncate ? ix.interval_of(v).end : 0;
      for (NodeId w : head_cos) {
        if (truncate && v_end < ix.interval_of(w).begin) break;
        if (ix.reaches(v, w)) row.add(w);
      }
    }
    if (row.empty()) return;
    row.for_each([&](NodeId w) { adj.bwd[w].add(v); });
    adj.fwd.emplace(v, std::move(row));
  });
  return adj;
}

namespace {

// Deletes candidates left without support on some incident edge and lets the
// deletions cascade through the rows.
void trim_unsupported(const PatternQuery& q, std::vector<NodeSet>& cos,
                      std::vector<RuntimeIndexGraph::EdgeAdj>& adj) {
  std::deque<std::pair<std::uint32_t, NodeId>> worklist;
  auto unsupported = [&](std::uint32_t qid, NodeId v) {
    for (std::uint32_t ei : q.out_edges(qid))
      if (!adj[ei].fwd.contains(v)) return true;
    for (std::uint32_t ei : q.in_edges(qid))
      if (!adj[ei].bwd.contains(v)) return true;
    return false;
  };
  for (std::uint32_t qid = 0; qid < q.num_nodes(); ++qid)
    cos[qid].for_each([&](NodeId v) {
      if (unsupported(qid, v)) worklist.emplace_back(qid, v);
    });

  while (!worklist.empty()) {
    const auto [qid, v] = worklist.front();
    worklist.pop_front();
    if (!cos[qid].contains(v)) continue;
    cos[qid].remove(v);
    for (std::uint32_t ei : q.out_edges(qid)) {
      auto it = adj[ei].fwd.find(v);
      if (it == adj[ei].fwd.end()) continue;
      const std::uint32_t head = q.edges()[ei].head;
      it->second.for_each([&](NodeId w) {
        auto back = adj[ei].bwd.find(w);
        back->second.remove(v);
        if (back->second.empty()) {
          adj[ei].bwd.erase(back);
          worklist.emplace_back(head, w);
        }
      });
      adj[ei].fwd.erase(it);
    }
    for (std::uint32_t ei : q.in_edges(qid)) {
      auto it = adj[ei].bwd.find(v);
      if (it == adj[ei].bwd.end()) continue;
      const std::uint32_t tail = q.edges()[ei].tail;
      it->second.for_each([&](NodeId w) {
        auto fwd = adj[ei].fwd.find(w);
        fwd->second.remove(v);
        if (fwd->second.empty()) {
          adj[ei].fwd.erase(fwd);
          worklist.emplace_back(tail, w);
        }
      });
      adj[ei].bwd.erase(it);
    }
  }
}

}  // namespace

RuntimeIndexGraph build_rig_from_cos(const PatternQuery& q, const DataGraph& g,
                                     const ReachIndex& ix, std::vector<NodeSet> cos, bool trim,
                                     bool dag_early_termination) {
  RuntimeIndexGraph rig;
  rig.query_ = &q;
  const bool any_empty = std::any_of(cos.begin(), cos.end(),
                                     [](const NodeSet& s) { return s.empty(); });
  if (any_empty) {
    rig.cos_.assign(q.num_nodes(), NodeSet());
    rig.adj_.assign(q.edges().size(), {});
    rig.empty_ = true;
    return rig;
  }

  rig.cos_ = std::move(cos);
  rig.adj_.reserve(q.edges().size());
  for (const QueryEdge& e : q.edges())
    rig.adj_.push_back(
        expand_edge(e, rig.cos_[e.tail], rig.cos_[e.head], g, ix, dag_early_termination));

  if (trim) trim_unsupported(q, rig.cos_, rig.adj_);

  if (std::any_of(rig.cos_.begin(), rig.cos_.end(),
                  [](const NodeSet& s) { return s.empty(); })) {
    rig.cos_.assign(q.num_nodes(), NodeSet());
    rig.adj_.assign(q.edges().size(), {});
    rig.empty_ = true;
    return rig;
  }

  rig.empty_ = false;
  rig.edge_count_ = 0;
  for (const auto& adj : rig.adj_)
    for (const auto& [v, row] : adj.fwd) rig.edge_count_ += row.size();
  return rig;
}

RuntimeIndexGraph build_rig(const PatternQuery& q, const DataGraph& g, const ReachIndex& ix,
                            RigMode mode, const SimOptions& sim_options, SimAlgo algo) {
  std::vector<NodeSet> cos;
  std::uint32_t passes = 0;
  bool exact = true;
  if (mode == RigMode::match) {
    cos = match_sets(q, g);
  } else {
    FBRelation fb;
    switch (algo) {
      case SimAlgo::bas:
        fb = fb_sim_bas(q, g, ix, sim_options);
        break;
      case SimAlgo::dag:
        fb = fb_sim_dag(q, g, ix, sim_options);
        break;
      case SimAlgo::aut:
        fb = fb_sim(q, g, ix, sim_options);
        break;
    }
    passes = fb.pass_count;
    exact = fb.exact;
    cos = std::move(fb.sets);
  }
  RuntimeIndexGraph rig = build_rig_from_cos(q, g, ix, std::move(cos),
                                             /*trim=*/mode == RigMode::refined,
                                             sim_options.dag_early_termination);
  rig.sim_passes_ = passes;
  rig.sim_exact_ = exact;
  return rig;
}

RigStats rig_stats(const RuntimeIndexGraph& rig, const DataGraph& g) {
  RigStats stats;
  stats.nodes = rig.num_nodes();
  stats.edges = rig.num_edges();
  const double denom = static_cast<double>(g.num_nodes() + g.num_edges());
  stats.ratio = denom > 0 ? static_cast<double>(stats.nodes + stats.edges) / denom : 0.0;
  return stats;
}

}  // namespace rigmatch
