#include "rigmatch/reach_index.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace rigmatch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Tarjan with an explicit stack. Component ids are assigned in completion
// order, so every condensation edge goes from a higher id to a lower one.
std::vector<std::uint32_t> tarjan_scc(const DataGraph& g, std::uint32_t& comp_count) {
  const auto n = static_cast<std::uint32_t>(g.num_nodes());
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> index(n, kUnset), lowlink(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::uint32_t next_index = 0;
  comp_count = 0;

  struct Frame {
    std::uint32_t v;
    std::vector<NodeId> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> call;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, g.adjacency(root, Direction::forward).to_vector(), 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < f.succ.size()) {
        const NodeId w = f.succ[f.next++];
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, g.adjacency(w, Direction::forward).to_vector(), 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const std::uint32_t v = f.v;
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          while (true) {
            const std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == v) break;
          }
          ++comp_count;
        }
      }
    }
  }
  return comp;
}

}  // namespace

ReachIndex ReachIndex::build(const DataGraph& g, const Options& options) {
  ReachIndex ix;
  const auto n = static_cast<std::uint32_t>(g.num_nodes());

  std::uint32_t comp_count = 0;
  if (g.is_dag()) {
    // Singleton components; keeping component id == node id preserves the
    // "ascending id == ascending begin" property the loader set up.
    ix.scc_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) ix.scc_[v] = v;
    comp_count = n;
  } else {
    ix.scc_ = tarjan_scc(g, comp_count);
  }

  std::vector<std::uint32_t> comp_size(comp_count, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++comp_size[ix.scc_[v]];
  ix.cyclic_.assign(comp_count, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t c = ix.scc_[v];
    if (comp_size[c] > 1 || g.adjacency(v, Direction::forward).contains(v)) ix.cyclic_[c] = 1;
  }

  ix.cond_.assign(comp_count, {});
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t cu = ix.scc_[v];
    g.adjacency(v, Direction::forward).for_each([&](NodeId w) {
      const std::uint32_t cw = ix.scc_[w];
      if (cw != cu) ix.cond_[cu].push_back(cw);
    });
  }
  for (auto& row : ix.cond_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  // Kahn with ascending ids for a deterministic topological order.
  {
    std::vector<std::uint32_t> indeg(comp_count, 0);
    for (const auto& row : ix.cond_)
      for (std::uint32_t w : row) ++indeg[w];
    std::vector<std::uint32_t> ready;
    for (std::uint32_t c = 0; c < comp_count; ++c)
      if (indeg[c] == 0) ready.push_back(c);
    std::make_heap(ready.begin(), ready.end(), std::greater<>());
    ix.topo_.reserve(comp_count);
    while (!ready.empty()) {
      std::pop_heap(ready.begin(), ready.end(), std::greater<>());
      const std::uint32_t c = ready.back();
      ready.pop_back();
      ix.topo_.push_back(c);
      for (std::uint32_t w : ix.cond_[c]) {
        if (--indeg[w] == 0) {
          ready.push_back(w);
          std::push_heap(ready.begin(), ready.end(), std::greater<>());
        }
      }
    }
    assert(ix.topo_.size() == comp_count);
  }

  // Interval labels from one DFS over the condensation (roots and neighbors in
  // ascending component id order).
  ix.intervals_.assign(comp_count, IntervalLabel{});
  {
    std::uint32_t clock = 0;
    std::vector<bool> seen(comp_count, false);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t root = 0; root < comp_count; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      ix.intervals_[root].begin = clock++;
      stack.emplace_back(root, 0);
      while (!stack.empty()) {
        auto& [c, i] = stack.back();
        if (i == ix.cond_[c].size()) {
          ix.intervals_[c].end = clock++;
          stack.pop_back();
          continue;
        }
        const std::uint32_t w = ix.cond_[c][i++];
        if (!seen[w]) {
          seen[w] = true;
          ix.intervals_[w].begin = clock++;
          stack.emplace_back(w, 0);
        }
      }
    }
  }

  // Hashed closure signatures: out over descendants (reverse topological),
  // in over ancestors (topological).
  ix.sig_words_ = std::max<std::uint32_t>(1, (options.signature_bits + 63) / 64);
  const std::uint32_t words = ix.sig_words_;
  const std::uint64_t bits_total = std::uint64_t{words} * 64;
  ix.out_sig_.assign(std::size_t{comp_count} * words, 0);
  ix.in_sig_.assign(std::size_t{comp_count} * words, 0);
  auto set_own_bit = [&](std::vector<std::uint64_t>& sig, std::uint32_t c) {
    const std::uint64_t h = splitmix64(c) % bits_total;
    sig[std::size_t{c} * words + (h >> 6)] |= std::uint64_t{1} << (h & 63);
  };
  for (auto it = ix.topo_.rbegin(); it != ix.topo_.rend(); ++it) {
    const std::uint32_t c = *it;
    set_own_bit(ix.out_sig_, c);
    for (std::uint32_t w : ix.cond_[c])
      for (std::uint32_t k = 0; k < words; ++k)
        ix.out_sig_[std::size_t{c} * words + k] |= ix.out_sig_[std::size_t{w} * words + k];
  }
  for (std::uint32_t c : ix.topo_) {
    set_own_bit(ix.in_sig_, c);
    for (std::uint32_t w : ix.cond_[c])
      for (std::uint32_t k = 0; k < words; ++k)
        ix.in_sig_[std::size_t{w} * words + k] |= ix.in_sig_[std::size_t{c} * words + k];
  }

  std::size_t slots = 1;
  while (slots < options.cache_slots) slots <<= 1;
  ix.cache_mask_ = slots - 1;
  ix.cache_ = std::make_unique<std::atomic<std::uint64_t>[]>(slots);
  for (std::size_t i = 0; i < slots; ++i)
    ix.cache_[i].store(0, std::memory_order_relaxed);

  if (comp_count >= (1u << 31))
    throw std::length_error("graph too large for the reachability cache encoding");
  return ix;
}

std::uint32_t ReachIndex::component_of(NodeId v) const {
  if (v >= scc_.size()) throw std::out_of_range("node id out of range");
  return scc_[v];
}

IntervalLabel ReachIndex::interval_of(NodeId v) const { return intervals_[component_of(v)]; }

bool ReachIndex::reaches(NodeId u, NodeId v) const {
  const std::uint32_t cu = component_of(u);
  const std::uint32_t cv = component_of(v);
  if (cu == cv) return cyclic_[cu] != 0;
  return component_reaches(cu, cv);
}

int ReachIndex::quick_check(std::uint32_t cu, std::uint32_t cv) const {
  const IntervalLabel iu = intervals_[cu];
  const IntervalLabel iv = intervals_[cv];
  if (iv.begin >= iu.end) return 0;  // a reachable target is discovered before cu departs
  if (iu.begin <= iv.begin && iv.end <= iu.end) return 1;  // DFS-tree descendant
  const std::size_t ou = std::size_t{cu} * sig_words_;
  const std::size_t ov = std::size_t{cv} * sig_words_;
  for (std::uint32_t k = 0; k < sig_words_; ++k)
    if ((out_sig_[ov + k] & ~out_sig_[ou + k]) != 0) return 0;
  for (std::uint32_t k = 0; k < sig_words_; ++k)
    if ((in_sig_[ou + k] & ~in_sig_[ov + k]) != 0) return 0;
  return -1;
}

bool ReachIndex::cache_lookup(std::uint32_t cu, std::uint32_t cv, bool& answer) const {
  const std::uint64_t key = (std::uint64_t{cu} << 33) | (std::uint64_t{cv} << 1);
  const std::uint64_t entry = cache_[splitmix64(key) & cache_mask_].load(std::memory_order_relaxed);
  if (entry == 0 || (entry & ~std::uint64_t{1}) != key) return false;
  answer = (entry & 1) != 0;
  return true;
}

void ReachIndex::cache_store(std::uint32_t cu, std::uint32_t cv, bool answer) const {
  const std::uint64_t key = (std::uint64_t{cu} << 33) | (std::uint64_t{cv} << 1);
  cache_[splitmix64(key) & cache_mask_].store(key | (answer ? 1 : 0),
                                              std::memory_order_relaxed);
}

bool ReachIndex::component_reaches(std::uint32_t cu, std::uint32_t cv) const {
  const int quick = quick_check(cu, cv);
  if (quick >= 0) return quick == 1;
  bool cached = false;
  if (cache_lookup(cu, cv, cached)) return cached;
  const bool answer = search(cu, cv);
  return answer;
}

bool ReachIndex::search(std::uint32_t start, std::uint32_t target) const {
  // Memoized DFS over the condensation; every fully explored component w gets
  // (w, target) recorded. 0 = in progress, 1 = done (false).
  std::unordered_map<std::uint32_t, std::uint8_t> state;
  struct Frame {
    std::uint32_t c;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({start, 0});
  state.emplace(start, 0);
  bool found = false;

  while (!stack.empty() && !found) {
    const std::uint32_t c = stack.back().c;
    const auto& children = cond_[c];
    bool descended = false;
    while (stack.back().next < children.size()) {
      const std::uint32_t w = children[stack.back().next++];
      if (w == target) {
        found = true;
        break;
      }
      const int quick = quick_check(w, target);
      if (quick == 0) continue;
      if (quick == 1) {
        found = true;
        break;
      }
      bool cached = false;
      if (cache_lookup(w, target, cached)) {
        if (cached) {
          found = true;
          break;
        }
        continue;
      }
      auto [it, inserted] = state.emplace(w, 0);
      (void)it;
      if (!inserted) continue;  // already explored; the condensation is acyclic
      stack.push_back({w, 0});
      descended = true;
      break;
    }
    if (found) break;
    if (!descended) {
      state[c] = 1;
      cache_store(c, target, false);
      stack.pop_back();
    }
  }

  if (found) {
    // Everything still on the stack lies on a path to the target.
    for (const Frame& f : stack) cache_store(f.c, target, true);
    return true;
  }
  return false;
}

}  // namespace rigmatch
