#include "rigmatch/oracle.hpp"

#include <string>

namespace rigmatch {

std::vector<std::vector<NodeId>> brute_force_oracle(const PatternQuery& q, const DataGraph& g,
                                                    const ReachIndex& ix,
                                                    const OracleOptions& options) {
  const std::vector<NodeSet> ms = match_sets(q, g);
  double product = 1.0;
  for (const NodeSet& s : ms) product *= static_cast<double>(s.size());
  if (product > options.guard_limit)
    throw OracleGuardError(product, "oracle refused: ms-size product estimate " +
                                        std::to_string(product) + " exceeds guard " +
                                        std::to_string(options.guard_limit));

  const std::size_t n = q.num_nodes();
  // Edges checked when their later endpoint (in qid order) gets bound.
  std::vector<std::vector<const QueryEdge*>> checks(n);
  for (const QueryEdge& e : q.edges()) checks[std::max(e.tail, e.head)].push_back(&e);

  EdgeMatchTester tester(g, ix);
  std::vector<std::vector<NodeId>> result;
  std::vector<NodeId> tuple(n, 0);
  bool capped = false;

  auto bind = [&](auto&& self, std::uint32_t qid) -> void {
    if (capped) return;
    if (qid == n) {
      result.push_back(tuple);
      if (options.max_matches && result.size() >= *options.max_matches) capped = true;
      return;
    }
    ms[qid].for_each([&](NodeId v) {
      if (capped) return;
      tuple[qid] = v;
      for (const QueryEdge* e : checks[qid])
        if (!tester.matches(*e, tuple[e->tail], tuple[e->head])) return;
      self(self, qid + 1);
    });
  };
  if (n > 0) bind(bind, 0);
  return result;
}

}  // namespace rigmatch
