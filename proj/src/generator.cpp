#include "rigmatch/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rigmatch {

DataGraph random_graph(const GraphGenSpec& spec) {
  if (spec.nodes == 0) throw std::invalid_argument("random_graph needs at least one node");
  std::mt19937_64 rng(spec.seed);
  const std::uint32_t labels = std::max<std::uint32_t>(1, spec.labels);
  std::uniform_int_distribution<std::uint32_t> node_dist(0, spec.nodes - 1);
  std::uniform_int_distribution<std::uint32_t> label_dist(0, labels - 1);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t max_edges =
      std::uint64_t{spec.nodes} * spec.nodes - (spec.allow_self_loops ? 0 : spec.nodes);
  const std::uint64_t target = std::min(spec.edges, max_edges);
  std::uint64_t attempts = 0;
  const std::uint64_t attempt_cap = 20 * target + 100;
  while (edges.size() < target && attempts++ < attempt_cap) {
    const std::uint32_t u = node_dist(rng);
    const std::uint32_t v = node_dist(rng);
    if (!spec.allow_self_loops && u == v) continue;
    if (!seen.insert((std::uint64_t{u} << 32) | v).second) continue;
    edges.emplace_back(u, v);
  }

  std::ostringstream text;
  text << "t " << spec.nodes << ' ' << edges.size() << '\n';
  for (std::uint32_t v = 0; v < spec.nodes; ++v)
    text << "v " << v << " l" << label_dist(rng) << '\n';
  for (const auto& [u, v] : edges) text << "e " << u << ' ' << v << '\n';
  return DataGraph::load_text(text.str());
}

PatternQuery random_query(const QueryGenSpec& spec) {
  if (spec.nodes == 0) throw std::invalid_argument("random_query needs at least one node");
  if (spec.label_pool.empty()) throw std::invalid_argument("random_query needs a label pool");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> label_dist(0, spec.label_pool.size() - 1);
  std::bernoulli_distribution reach(spec.reachability_prob);
  std::bernoulli_distribution coin(0.5);

  std::vector<QueryNode> nodes;
  nodes.reserve(spec.nodes);
  for (std::uint32_t v = 0; v < spec.nodes; ++v)
    nodes.push_back({v, spec.label_pool[label_dist(rng)]});

  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<QueryEdge> edges;
  auto push_edge = [&](std::uint32_t tail, std::uint32_t head) {
    pairs.emplace(tail, head);
    edges.push_back({tail, head,
                     reach(rng) ? EdgeKind::reachability : EdgeKind::direct});
  };

  for (std::uint32_t v = 1; v < spec.nodes; ++v) {
    std::uniform_int_distribution<std::uint32_t> parent_dist(0, v - 1);
    const std::uint32_t p = parent_dist(rng);
    if (spec.shape == QueryGenSpec::Shape::dag || !coin(rng))
      push_edge(p, v);
    else
      push_edge(v, p);
  }

  std::uniform_int_distribution<std::uint32_t> node_dist(0, spec.nodes - 1);
  for (std::uint32_t added = 0, tries = 0; added < spec.extra_edges && tries < 64; ++tries) {
    std::uint32_t a = node_dist(rng);
    std::uint32_t b = node_dist(rng);
    if (a == b) continue;
    if (spec.shape == QueryGenSpec::Shape::dag && a > b) std::swap(a, b);
    if (pairs.contains({a, b})) continue;
    push_edge(a, b);
    ++added;
  }

  if (spec.shape == QueryGenSpec::Shape::cyclic) {
    PatternQuery probe = PatternQuery::make(nodes, edges);
    if (probe.is_dag()) {
      // Close a cycle on the first edge whose reverse pair is still free.
      for (const QueryEdge& e : probe.edges()) {
        if (pairs.contains({e.head, e.tail})) continue;
        push_edge(e.head, e.tail);
        break;
      }
    }
  }
  return PatternQuery::make(std::move(nodes), std::move(edges));
}

}  // namespace rigmatch
