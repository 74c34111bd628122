#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigmatch/data_graph.hpp"
#include "rigmatch/pattern_query.hpp"

namespace rigmatch {

// Seeded uniform digraph with labels "l0".."l{k-1}". Goes through the text
// loader, so the result obeys every DataGraph invariant (dedup, renumbering).
struct GraphGenSpec {
  std::uint32_t nodes = 20;
  std::uint64_t edges = 40;
  std::uint32_t labels = 3;
  std::uint64_t seed = 1;
  bool allow_self_loops = true;
};
DataGraph random_graph(const GraphGenSpec& spec);

// Connected query: a random spanning tree plus extra edges, kinds drawn per
// edge with the given reachability probability.
struct QueryGenSpec {
  std::uint32_t nodes = 4;
  std::uint32_t extra_edges = 1;
  double reachability_prob = 0.5;
  std::vector<std::string> label_pool;
  std::uint64_t seed = 1;
  enum class Shape { any, dag, cyclic } shape = Shape::any;
};
PatternQuery random_query(const QueryGenSpec& spec);

}  // namespace rigmatch
