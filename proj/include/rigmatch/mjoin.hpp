#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "rigmatch/rig.hpp"
#include "rigmatch/search_order.hpp"

namespace rigmatch {

struct EnumLimits {
  std::optional<std::uint64_t> max_matches;          // benchmark preset: 1e7
  std::optional<std::chrono::milliseconds> timeout;  // benchmark preset: 600 s
};

struct EnumReport {
  std::uint64_t matches = 0;
  bool completed = true;  // false iff a limit truncated the answer
  std::chrono::microseconds elapsed{0};
  // Peak of the summed live candidate-set cardinalities across recursion
  // levels; bounded by |V_Q| * max |cos|.
  std::size_t peak_candidate_cells = 0;
};

// Assignment indexed by qid; valid only during the callback. Returning false
// stops the enumeration (reported as not completed).
using TupleSink = std::function<bool(std::span<const NodeId>)>;

// Backtracking multi-way intersection over the RIG, one query node per level
// in the given order. Emits every occurrence exactly once, ascending by id
// within each level. With max_matches=k the enumeration keeps searching after
// the k-th match just long enough to learn whether anything more exists, so
// completed is false exactly when the answer was truncated.
EnumReport mjoin(const PatternQuery& q, const RuntimeIndexGraph& rig, const SearchOrder& order,
                 const EnumLimits& limits, const TupleSink& sink);

// Same traversal without tuple delivery.
EnumReport count_matches(const PatternQuery& q, const RuntimeIndexGraph& rig,
                         const SearchOrder& order, const EnumLimits& limits);

}  // namespace rigmatch
