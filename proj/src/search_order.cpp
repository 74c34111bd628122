#include "rigmatch/search_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace rigmatch {

SearchOrder order_jo(const PatternQuery& q, const RuntimeIndexGraph& rig) {
  if (rig.empty() && q.num_nodes() > 0 && rig.cos(0).empty())
    throw std::invalid_argument("cannot order an empty RIG");
  const std::size_t n = q.num_nodes();
  std::vector<bool> chosen(n, false), eligible(n, false);
  SearchOrder order;
  order.method = SearchOrder::Method::jo;
  order.sequence.reserve(n);

  std::uint32_t best = 0;
  for (std::uint32_t v = 1; v < n; ++v)
    if (rig.cos(v).size() < rig.cos(best).size()) best = v;
  order.sequence.push_back(best);
  chosen[best] = true;
  for (std::uint32_t w : q.undirected_neighbors(best)) eligible[w] = true;

  while (order.sequence.size() < n) {
    std::uint32_t pick = 0;
    bool have = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (chosen[v] || !eligible[v]) continue;
      if (!have || rig.cos(v).size() < rig.cos(pick).size()) {
        pick = v;
        have = true;
      }
    }
    if (!have) throw std::logic_error("disconnected query in order_jo");
    order.sequence.push_back(pick);
    chosen[pick] = true;
    for (std::uint32_t w : q.undirected_neighbors(pick))
      if (!chosen[w]) eligible[w] = true;
  }
  return order;
}

SearchOrder order_ri(const PatternQuery& q) {
  const std::size_t n = q.num_nodes();
  std::vector<std::size_t> degree(n);
  for (std::uint32_t v = 0; v < n; ++v) degree[v] = q.undirected_neighbors(v).size();

  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> prefix_neighbors(n, 0);
  SearchOrder order;
  order.method = SearchOrder::Method::ri;
  order.sequence.reserve(n);

  std::uint32_t best = 0;
  for (std::uint32_t v = 1; v < n; ++v)
    if (degree[v] > degree[best]) best = v;
  order.sequence.push_back(best);
  chosen[best] = true;
  for (std::uint32_t w : q.undirected_neighbors(best)) ++prefix_neighbors[w];

  while (order.sequence.size() < n) {
    std::uint32_t pick = 0;
    bool have = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (chosen[v] || prefix_neighbors[v] == 0) continue;
      if (!have) {
        pick = v;
        have = true;
        continue;
      }
      if (prefix_neighbors[v] != prefix_neighbors[pick]) {
        if (prefix_neighbors[v] > prefix_neighbors[pick]) pick = v;
      } else if (degree[v] != degree[pick]) {
        if (degree[v] > degree[pick]) pick = v;
      }
      // equal on both: keep the smaller qid (v scans ascending)
    }
    if (!have) throw std::logic_error("disconnected query in order_ri");
    order.sequence.push_back(pick);
    chosen[pick] = true;
    for (std::uint32_t w : q.undirected_neighbors(pick))
      if (!chosen[w]) ++prefix_neighbors[w];
  }
  return order;
}

bool valid_search_order(const PatternQuery& q, const std::vector<std::uint32_t>& sequence) {
  const std::size_t n = q.num_nodes();
  if (sequence.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : sequence) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  std::vector<bool> in_prefix(n, false);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const std::uint32_t v = sequence[i];
    if (i > 0) {
      bool touches = false;
      for (std::uint32_t w : q.undirected_neighbors(v))
        if (in_prefix[w]) {
          touches = true;
          break;
        }
      if (!touches) return false;
    }
    in_prefix[v] = true;
  }
  return true;
}

SearchOrder explicit_order(const PatternQuery& q, std::vector<std::uint32_t> sequence) {
  if (!valid_search_order(q, sequence))
    throw std::invalid_argument("explicit order is not a connected-prefix permutation");
  SearchOrder order;
  order.method = SearchOrder::Method::explicit_order;
  order.sequence = std::move(sequence);
  return order;
}

}  // namespace rigmatch
