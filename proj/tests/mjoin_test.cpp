#include "rigmatch/mjoin.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "fixtures.hpp"
#include "rigmatch/generator.hpp"
#include "rigmatch/oracle.hpp"

namespace rigmatch {
namespace {

std::vector<std::vector<NodeId>> run_sorted(const PatternQuery& q, const RuntimeIndexGraph& rig,
                                            const SearchOrder& order) {
  std::vector<std::vector<NodeId>> tuples;
  mjoin(q, rig, order, EnumLimits{}, [&](std::span<const NodeId> t) {
    tuples.emplace_back(t.begin(), t.end());
    return true;
  });
  std::sort(tuples.begin(), tuples.end());
  return tuples;
}

struct SmallInstance {
  DataGraph graph;
  PatternQuery query;
  std::optional<ReachIndex> index;

  explicit SmallInstance(std::uint64_t seed) {
    GraphGenSpec gspec{20 + static_cast<std::uint32_t>(seed % 15),
                       50 + static_cast<std::uint32_t>(seed % 40), 3, seed};
    graph = random_graph(gspec);
    std::vector<std::string> pool;
    for (Label l = 0; l < graph.num_labels(); ++l) pool.push_back(graph.label_name(l));
    QueryGenSpec qspec;
    qspec.nodes = 3 + static_cast<std::uint32_t>(seed % 3);
    qspec.extra_edges = static_cast<std::uint32_t>(seed % 2);
    qspec.reachability_prob = 0.5 * static_cast<double>(seed % 3);
    qspec.label_pool = pool;
    qspec.seed = seed;
    qspec.shape = seed % 4 == 0 ? QueryGenSpec::Shape::cyclic : QueryGenSpec::Shape::any;
    query = random_query(qspec).transitive_reduction();
    index.emplace(ReachIndex::build(graph));
  }
};

TEST(MJoin, RunningExampleAnswerSet) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  const SearchOrder order = order_jo(fx.query, rig);

  std::vector<std::vector<NodeId>> expected = {
      fx.tuple({1, 3, 7}),  // (a1, b0, c0)
      fx.tuple({1, 3, 8}),  // (a1, b0, c1)
      fx.tuple({2, 5, 7}),  // (a2, b2, c0)
      fx.tuple({2, 5, 9}),  // (a2, b2, c2)
  };
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(run_sorted(fx.query, rig, order), expected);

  // The spurious RIG edge (b2, c1) never shows up in a tuple.
  for (const auto& t : run_sorted(fx.query, rig, order))
    EXPECT_FALSE(t[1] == fx.id(5) && t[2] == fx.id(8));

  // And the count matches the oracle.
  const EnumReport count = count_matches(fx.query, rig, order, EnumLimits{});
  EXPECT_EQ(count.matches, 4u);
  EXPECT_TRUE(count.completed);
  EXPECT_EQ(brute_force_oracle(fx.query, fx.graph, *fx.index).size(), 4u);
}

TEST(MJoin, SingleNodeQueryEmitsTheInvertedList) {
  testing::ExampleFixture fx;
  const PatternQuery q = PatternQuery::parse_text("n 0 b\n");
  const RuntimeIndexGraph rig = build_rig(q, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  const auto tuples = run_sorted(q, rig, order_jo(q, rig));
  ASSERT_EQ(tuples.size(), 4u);
  NodeSet seen;
  for (const auto& t : tuples) seen.add(t[0]);
  EXPECT_EQ(seen, fx.graph.inverted_list("b"));
}

TEST(MJoin, EmptyRigShortCircuits) {
  testing::ExampleFixture fx;
  const PatternQuery q = PatternQuery::parse_text("n 0 a\nn 1 none\nr 0 1\n");
  const RuntimeIndexGraph rig = build_rig(q, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  ASSERT_TRUE(rig.empty());
  const EnumReport report = count_matches(q, rig, SearchOrder{.sequence = {0, 1}}, EnumLimits{});
  EXPECT_EQ(report.matches, 0u);
  EXPECT_TRUE(report.completed);
}

TEST(MJoin, MatchesOracleOnFuzzedInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    SmallInstance inst(seed);
    const auto oracle = brute_force_oracle(inst.query, inst.graph, *inst.index);
    for (RigMode mode : {RigMode::refined, RigMode::match}) {
      const RuntimeIndexGraph rig = build_rig(inst.query, inst.graph, *inst.index, mode,
                                              SimOptions{});
      if (rig.empty()) {
        EXPECT_TRUE(oracle.empty()) << "seed " << seed;
        continue;
      }
      for (const char* spec : {"jo", "ri"}) {
        const SearchOrder order = spec == std::string("jo") ? order_jo(inst.query, rig)
                                                            : order_ri(inst.query);
        EXPECT_EQ(run_sorted(inst.query, rig, order), oracle)
            << "seed " << seed << " order " << spec;
      }
    }
  }
}

TEST(MJoin, NoDuplicatesAndInjectiveTuplesAreEmbeddings) {
  for (std::uint64_t seed = 100; seed <= 120; ++seed) {
    SmallInstance inst(seed);
    const RuntimeIndexGraph rig =
        build_rig(inst.query, inst.graph, *inst.index, RigMode::refined, SimOptions{});
    if (rig.empty()) continue;
    const auto tuples = run_sorted(inst.query, rig, order_jo(inst.query, rig));
    EXPECT_EQ(std::adjacent_find(tuples.begin(), tuples.end()), tuples.end()) << "seed " << seed;

    EdgeMatchTester tester(inst.graph, *inst.index);
    for (const auto& t : tuples) {
      std::set<NodeId> distinct(t.begin(), t.end());
      if (distinct.size() != t.size()) continue;  // not injective
      for (const QueryEdge& e : inst.query.edges())
        EXPECT_TRUE(tester.matches(e, t[e.tail], t[e.head])) << "seed " << seed;
    }
  }
}

TEST(MJoin, ExplicitOrdersGiveTheSameAnswer) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  const auto base = run_sorted(fx.query, rig, order_jo(fx.query, rig));
  for (std::vector<std::uint32_t> seq :
       {std::vector<std::uint32_t>{2, 0, 1}, {1, 0, 2}, {2, 1, 0}}) {
    EXPECT_EQ(run_sorted(fx.query, rig, explicit_order(fx.query, seq)), base);
  }
}

TEST(MJoin, MemoryStaysWithinTheCosBound) {
  for (std::uint64_t seed = 200; seed <= 215; ++seed) {
    SmallInstance inst(seed);
    const RuntimeIndexGraph rig =
        build_rig(inst.query, inst.graph, *inst.index, RigMode::refined, SimOptions{});
    if (rig.empty()) continue;
    const SearchOrder order = order_jo(inst.query, rig);
    const EnumReport report = count_matches(inst.query, rig, order, EnumLimits{});
    std::size_t max_cos = 0;
    for (std::uint32_t qid = 0; qid < inst.query.num_nodes(); ++qid)
      max_cos = std::max(max_cos, rig.cos(qid).size());
    EXPECT_LE(report.peak_candidate_cells, inst.query.num_nodes() * max_cos) << "seed " << seed;
  }
}

TEST(MJoin, MaxMatchesSemantics) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  const SearchOrder order = order_jo(fx.query, rig);

  for (std::uint64_t cap = 0; cap <= 5; ++cap) {
    EnumLimits limits;
    limits.max_matches = cap;
    std::vector<std::vector<NodeId>> got;
    const EnumReport report = mjoin(fx.query, rig, order, limits, [&](auto t) {
      got.emplace_back(t.begin(), t.end());
      return true;
    });
    const std::uint64_t expect = std::min<std::uint64_t>(cap, 4);
    EXPECT_EQ(report.matches, expect);
    EXPECT_EQ(got.size(), expect);
    EXPECT_EQ(report.completed, cap >= 4);  // false iff truncated
    // Every emitted tuple is a genuine occurrence.
    EdgeMatchTester tester(fx.graph, *fx.index);
    for (const auto& t : got)
      for (const QueryEdge& e : fx.query.edges())
        EXPECT_TRUE(tester.matches(e, t[e.tail], t[e.head]));
  }
}

TEST(MJoin, DeterministicEmissionOrder) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  const SearchOrder order = order_jo(fx.query, rig);
  std::vector<std::vector<NodeId>> first, second;
  mjoin(fx.query, rig, order, EnumLimits{}, [&](auto t) {
    first.emplace_back(t.begin(), t.end());
    return true;
  });
  mjoin(fx.query, rig, order, EnumLimits{}, [&](auto t) {
    second.emplace_back(t.begin(), t.end());
    return true;
  });
  EXPECT_EQ(first, second);
  // max_matches=2 takes exactly the first two of the deterministic order.
  EnumLimits limits;
  limits.max_matches = 2;
  std::vector<std::vector<NodeId>> capped;
  mjoin(fx.query, rig, order, limits, [&](auto t) {
    capped.emplace_back(t.begin(), t.end());
    return true;
  });
  EXPECT_EQ(capped, (std::vector<std::vector<NodeId>>{first[0], first[1]}));
}

TEST(MJoin, SinkCanStopTheEnumeration) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  std::size_t delivered = 0;
  const EnumReport report =
      mjoin(fx.query, rig, order_jo(fx.query, rig), EnumLimits{}, [&](auto) {
        ++delivered;
        return delivered < 2;
      });
  EXPECT_EQ(delivered, 2u);
  EXPECT_FALSE(report.completed);
}

TEST(MJoin, SinkExceptionsPropagate) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  EXPECT_THROW(mjoin(fx.query, rig, order_jo(fx.query, rig), EnumLimits{},
                     [&](auto) -> bool { throw std::runtime_error("sink failed"); }),
               std::runtime_error);
}

TEST(MJoin, TimeoutReportsIncomplete) {
  testing::ExampleFixture fx;
  const RuntimeIndexGraph rig =
      build_rig(fx.query, fx.graph, *fx.index, RigMode::refined, SimOptions{});
  EnumLimits limits;
  limits.timeout = std::chrono::milliseconds(0);  // already expired at entry
  const EnumReport report = count_matches(fx.query, rig, order_jo(fx.query, rig), limits);
  EXPECT_FALSE(report.completed);
  EXPECT_EQ(report.matches, 0u);
}

TEST(MJoin, ConcurrentEnumerationsOverOneRig) {
  SmallInstance inst(7);
  const RuntimeIndexGraph rig =
      build_rig(inst.query, inst.graph, *inst.index, RigMode::refined, SimOptions{});
  if (rig.empty()) GTEST_SKIP() << "instance happens to be empty";
  const auto expected = run_sorted(inst.query, rig, order_jo(inst.query, rig));

  std::vector<std::thread> workers;
  std::vector<std::vector<std::vector<NodeId>>> results(4);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      const SearchOrder order =
          t % 2 == 0 ? order_jo(inst.query, rig) : order_ri(inst.query);
      results[t] = run_sorted(inst.query, rig, order);
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& r : results) EXPECT_EQ(r, expected);
}

TEST(Oracle, GuardRefusesHugeProducts) {
  testing::ExampleFixture fx;
  // Nine query nodes over the same labels: 3^4 * 4^5 > the tiny guard below.
  const PatternQuery q = PatternQuery::parse_text(
      "n 0 a\nn 1 b\nn 2 c\nn 3 a\nn 4 b\nn 5 c\nn 6 a\nn 7 b\nn 8 c\n"
      "d 0 1\nd 1 2\nd 3 4\nd 4 5\nd 6 7\nd 7 8\nd 0 3\nd 3 6\n");
  OracleOptions options;
  options.guard_limit = 1000;
  try {
    brute_force_oracle(q, fx.graph, *fx.index, options);
    FAIL() << "guard must refuse";
  } catch (const OracleGuardError& e) {
    EXPECT_GT(e.estimate(), 1000.0);
  }
}

TEST(Oracle, EdgeWithNoMatchingPairGivesEmptyAnswer) {
  testing::ExampleFixture fx;
  // No c node has an edge back to an a node.
  const PatternQuery q = PatternQuery::parse_text("n 0 c\nn 1 a\nd 0 1\n");
  EXPECT_TRUE(brute_force_oracle(q, fx.graph, *fx.index).empty());
}

}  // namespace
}  // namespace rigmatch
