#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "rigmatch/data_graph.hpp"
#include "rigmatch/pattern_query.hpp"
#include "rigmatch/reach_index.hpp"

namespace rigmatch::testing {

// The running-example instance: query {A -> B, A -> C direct; B => C
// reachability} over a ten-node graph with labels a/b/c. External ids:
//   a0=0 a1=1 a2=2   b0=3 b1=4 b2=5 b3=6   c0=7 c1=8 c2=9
// Hand-picked so every stage has something to do:
//   forward simulation  F(A)={a1,a2}  F(B)={b0,b1,b2}  F(C)={c0,c1,c2}
//   backward simulation B(A)={a0,a1,a2}  B(B)={b0,b2,b3}  B(C)={c0,c1,c2}
//   double simulation   FB(A)={a1,a2}  FB(B)={b0,b2}  FB(C)={c0,c1,c2}
//   reachability matches of (B,C): {(b0,c0),(b0,c1),(b1,c0),(b1,c2),
//                                   (b2,c0),(b2,c1),(b2,c2)}
//   refined RIG = answer RIG plus the single spurious edge (b2,c1)
//   answer = {(a1,b0,c0),(a1,b0,c1),(a2,b2,c0),(a2,b2,c2)}
inline constexpr const char* kExampleGraphText = R"(# running example data graph
t 10 13
v 0 a
v 1 a
v 2 a
v 3 b
v 4 b
v 5 b
v 6 b
v 7 c
v 8 c
v 9 c
e 0 6
e 1 3
e 1 7
e 1 8
e 2 5
e 2 7
e 2 9
e 3 7
e 3 8
e 4 7
e 4 9
e 5 3
e 5 9
)";

inline constexpr const char* kExampleQueryText = R"(# A -> B, A -> C, B => C
n 0 a
n 1 b
n 2 c
d 0 1
d 0 2
r 1 2
)";

// Three-node chain with a redundant reachability shortcut: A -> B -> C direct,
// A => C transitive.
inline constexpr const char* kReductionQueryText = R"(n 0 a
n 1 b
n 2 c
d 0 1
d 1 2
r 0 2
)";

struct ExampleFixture {
  DataGraph graph;
  PatternQuery query;
  std::optional<ReachIndex> index;

  ExampleFixture()
      : graph(DataGraph::load_text(kExampleGraphText)),
        query(PatternQuery::parse_text(kExampleQueryText)) {
    index.emplace(ReachIndex::build(graph));
  }
  ExampleFixture(const ExampleFixture&) = delete;
  ExampleFixture& operator=(const ExampleFixture&) = delete;

  NodeId id(NodeId external) const { return graph.internal_id(external); }

  NodeSet ids(std::initializer_list<NodeId> external) const {
    NodeSet s;
    for (NodeId e : external) s.add(graph.internal_id(e));
    return s;
  }

  std::vector<NodeId> tuple(std::initializer_list<NodeId> external) const {
    std::vector<NodeId> t;
    for (NodeId e : external) t.push_back(graph.internal_id(e));
    return t;
  }
};

}  // namespace rigmatch::testing
