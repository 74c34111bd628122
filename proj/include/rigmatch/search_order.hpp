#pragma once

#include <cstdint>
#include <vector>

#include "rigmatch/rig.hpp"

namespace rigmatch {

// Permutation of query nodes with connected prefixes: every node after the
// first touches (ignoring direction) some earlier node.
struct SearchOrder {
  enum class Method { jo, ri, explicit_order };
  std::vector<std::uint32_t> sequence;
  Method method = Method::explicit_order;
};

// Cardinality-greedy: start at the smallest candidate occurrence set, then
// repeatedly take the connectivity-eligible node with the smallest set; ties
// go to the smallest qid. Throws std::invalid_argument on an empty RIG.
SearchOrder order_jo(const PatternQuery& q, const RuntimeIndexGraph& rig);

// Topology-only: start at the maximum undirected degree, then repeatedly take
// the node with the most neighbors already ordered; ties by total degree
// descending, then qid ascending.
SearchOrder order_ri(const PatternQuery& q);

// Validates a user-supplied permutation (connected prefixes included).
SearchOrder explicit_order(const PatternQuery& q, std::vector<std::uint32_t> sequence);

bool valid_search_order(const PatternQuery& q, const std::vector<std::uint32_t>& sequence);

}  // namespace rigmatch
