#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "rigmatch/data_graph.hpp"

namespace rigmatch {

// DFS discovery/departure times of one condensation component. For a node u on
// a path to v it always holds that v.begin < u.end, so "u.end < v.begin" is a
// certificate of non-reachability (and, on acyclic data where components are
// single nodes, the basis of the ascending-scan early termination).
struct IntervalLabel {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

// Exact reachability oracle: SCC condensation, a DFS interval label per
// component for cheap negatives, hashed in/out signatures for set-containment
// pruning, and a memoized depth-first fallback that settles whatever the
// pruning layers leave undecided. reaches(u, v) uses nonempty-path semantics:
// reaches(u, u) is true only when u lies on a cycle (a self-loop counts).
class ReachIndex {
 public:
  struct Options {
    std::uint32_t signature_bits = 64;   // per direction; rounded up to a word
    std::size_t cache_slots = 1u << 20;  // lossy memo cache; power of two
  };

  static ReachIndex build(const DataGraph& g, const Options& options);
  static ReachIndex build(const DataGraph& g) { return build(g, Options{}); }

  bool reaches(NodeId u, NodeId v) const;

  std::uint32_t component_of(NodeId v) const;
  std::size_t num_components() const { return cyclic_.size(); }
  bool component_cyclic(std::uint32_t c) const { return cyclic_[c] != 0; }
  // Components listed in topological order of the condensation.
  const std::vector<std::uint32_t>& topological_order() const { return topo_; }
  IntervalLabel interval_of(NodeId v) const;

 private:
  ReachIndex() = default;

  bool component_reaches(std::uint32_t cu, std::uint32_t cv) const;
  // -1 unknown, otherwise 0/1. Interval + signature pruning only.
  int quick_check(std::uint32_t cu, std::uint32_t cv) const;
  bool search(std::uint32_t cu, std::uint32_t cv) const;

  bool cache_lookup(std::uint32_t cu, std::uint32_t cv, bool& answer) const;
  void cache_store(std::uint32_t cu, std::uint32_t cv, bool answer) const;

  std::vector<std::uint32_t> scc_;                // node -> component
  std::vector<std::uint8_t> cyclic_;              // component
  std::vector<std::uint32_t> topo_;               // components, sources first
  std::vector<IntervalLabel> intervals_;          // component
  std::vector<std::vector<std::uint32_t>> cond_;  // condensation children, sorted
  std::uint32_t sig_words_ = 1;
  std::vector<std::uint64_t> out_sig_;  // component * sig_words_
  std::vector<std::uint64_t> in_sig_;

  // Lossy lock-free memo table: each slot packs (cu << 33) | (cv << 1) | answer,
  // 0 meaning empty. Answers never change, so torn overwrites are harmless.
  std::size_t cache_mask_ = 0;
  mutable std::unique_ptr<std::atomic<std::uint64_t>[]> cache_;
};

}  // namespace rigmatch
