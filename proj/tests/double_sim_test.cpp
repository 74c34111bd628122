#include "rigmatch/double_sim.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "rigmatch/generator.hpp"
#include "rigmatch/oracle.hpp"

namespace rigmatch {
namespace {

const SimOptions kExact{};
const SimOptions kAllOff{std::nullopt, false, false, false, false};

struct Instance {
  DataGraph graph;
  PatternQuery query;
  std::optional<ReachIndex> index;

  Instance(std::uint64_t seed, QueryGenSpec::Shape shape, double reach_prob) {
    std::mt19937_64 meta(seed);
    GraphGenSpec gspec;
    gspec.nodes = 10 + static_cast<std::uint32_t>(meta() % 20);
    gspec.edges = gspec.nodes * (1 + meta() % 3);
    gspec.labels = 1 + static_cast<std::uint32_t>(meta() % 3);
    gspec.seed = seed;
    graph = random_graph(gspec);
    std::vector<std::string> pool;
    for (Label l = 0; l < graph.num_labels(); ++l) pool.push_back(graph.label_name(l));
    QueryGenSpec qspec;
    qspec.nodes = 3 + static_cast<std::uint32_t>(meta() % 3);
    qspec.extra_edges = static_cast<std::uint32_t>(meta() % 3);
    qspec.reachability_prob = reach_prob;
    qspec.label_pool = pool;
    qspec.seed = seed;
    qspec.shape = shape;
    query = random_query(qspec).transitive_reduction();
    index.emplace(ReachIndex::build(graph));
  }
};

TEST(DoubleSim, RunningExampleSimulationTable) {
  testing::ExampleFixture fx;
  const FBRelation fwd = forward_sim_only(fx.query, fx.graph, *fx.index, kExact);
  EXPECT_EQ(fwd.sets[0], fx.ids({1, 2}));
  EXPECT_EQ(fwd.sets[1], fx.ids({3, 4, 5}));
  EXPECT_EQ(fwd.sets[2], fx.ids({7, 8, 9}));

  const FBRelation bwd = backward_sim_only(fx.query, fx.graph, *fx.index, kExact);
  EXPECT_EQ(bwd.sets[0], fx.ids({0, 1, 2}));
  EXPECT_EQ(bwd.sets[1], fx.ids({3, 5, 6}));
  EXPECT_EQ(bwd.sets[2], fx.ids({7, 8, 9}));

  const FBRelation fb = fb_sim_bas(fx.query, fx.graph, *fx.index, kExact);
  EXPECT_TRUE(fb.exact);
  EXPECT_EQ(fb.sets[0], fx.ids({1, 2}));
  EXPECT_EQ(fb.sets[1], fx.ids({3, 5}));
  EXPECT_EQ(fb.sets[2], fx.ids({7, 8, 9}));

  // FB is contained in the per-node intersection of the one-sided relations.
  for (std::uint32_t qid = 0; qid < 3; ++qid)
    EXPECT_TRUE(fb.sets[qid].is_subset_of(fwd.sets[qid] & bwd.sets[qid]));
}

TEST(DoubleSim, DagVariantAgreesOnTheRunningExample) {
  testing::ExampleFixture fx;
  const FBRelation bas = fb_sim_bas(fx.query, fx.graph, *fx.index, kExact);
  const FBRelation dag = fb_sim_dag(fx.query, fx.graph, *fx.index, kExact);
  const FBRelation combo = fb_sim(fx.query, fx.graph, *fx.index, kExact);
  EXPECT_EQ(bas.sets, dag.sets);
  EXPECT_EQ(bas.sets, combo.sets);
}

TEST(DoubleSim, SingleNodeQuery) {
  testing::ExampleFixture fx;
  const PatternQuery q = PatternQuery::parse_text("n 0 a\n");
  const FBRelation fb = fb_sim_bas(q, fx.graph, *fx.index, kExact);
  EXPECT_EQ(fb.sets[0], fx.graph.inverted_list("a"));
  EXPECT_EQ(fb.pass_count, 1u);
  EXPECT_TRUE(fb.exact);
}

TEST(DoubleSim, AbsentLabelShortCircuitsToAllEmpty) {
  testing::ExampleFixture fx;
  const PatternQuery q = PatternQuery::parse_text("n 0 a\nn 1 zz\nd 0 1\n");
  const FBRelation fb = fb_sim(q, fx.graph, *fx.index, kExact);
  EXPECT_TRUE(fb.exact);
  for (const NodeSet& s : fb.sets) EXPECT_TRUE(s.empty());
}

TEST(DoubleSim, TreeQueryStabilizesInOnePass) {
  testing::ExampleFixture fx;
  const PatternQuery tree = PatternQuery::parse_text("n 0 a\nn 1 b\nn 2 c\nd 0 1\nr 1 2\n");
  const FBRelation fb = fb_sim_dag(tree, fx.graph, *fx.index, kExact);
  EXPECT_TRUE(fb.exact);
  EXPECT_EQ(fb.pass_count, 1u);
  EXPECT_EQ(fb.sets, fb_sim_bas(tree, fx.graph, *fx.index, kExact).sets);
}

TEST(DoubleSim, MultiParentTreeNeedsMoreThanOnePass) {
  // Undirected tree, but q0 has two parents: the backward sweep removes a1 and
  // a2 from FB(q0), stripping b2's forward witness, so a second pass must run.
  const DataGraph g = DataGraph::load_text(
      "t 6 4\nv 0 a\nv 1 a\nv 2 a\nv 3 b\nv 4 b\nv 5 c\n"
      "e 3 2\ne 4 0\ne 5 1\ne 5 2\n");
  const ReachIndex ix = ReachIndex::build(g);
  const PatternQuery q = PatternQuery::parse_text("n 0 a\nn 1 b\nn 2 c\nd 1 0\nd 2 0\n");

  const FBRelation dag = fb_sim_dag(q, g, ix, kExact);
  const FBRelation bas = fb_sim_bas(q, g, ix, kExact);
  EXPECT_EQ(dag.sets, bas.sets);
  EXPECT_EQ(dag.sets[0], NodeSet{g.internal_id(2)});
  EXPECT_EQ(dag.sets[1], NodeSet{g.internal_id(3)});
  EXPECT_EQ(dag.sets[2], NodeSet{g.internal_id(5)});
  EXPECT_GT(dag.pass_count, 1u);
}

TEST(DoubleSim, DagVariantRejectsCyclicQueries) {
  testing::ExampleFixture fx;
  const PatternQuery cyc = PatternQuery::parse_text("n 0 b\nn 1 b\nd 0 1\nd 1 0\n");
  EXPECT_THROW(fb_sim_dag(cyc, fx.graph, *fx.index, kExact), std::invalid_argument);
}

TEST(DoubleSim, UniquenessAcrossVariantsOnDagQueries) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst(seed, QueryGenSpec::Shape::dag, seed % 3 * 0.5);
    const FBRelation bas = fb_sim_bas(inst.query, inst.graph, *inst.index, kExact);
    const FBRelation dag = fb_sim_dag(inst.query, inst.graph, *inst.index, kExact);
    const FBRelation combo = fb_sim(inst.query, inst.graph, *inst.index, kExact);
    EXPECT_EQ(bas.sets, dag.sets) << "seed " << seed;
    EXPECT_EQ(bas.sets, combo.sets) << "seed " << seed;
    EXPECT_TRUE(bas.exact);
  }
}

TEST(DoubleSim, UniquenessOnCyclicQueries) {
  for (std::uint64_t seed = 100; seed <= 125; ++seed) {
    Instance inst(seed, QueryGenSpec::Shape::cyclic, 0.5);
    if (inst.query.is_dag()) continue;  // reduction may have removed the cycle
    const FBRelation bas = fb_sim_bas(inst.query, inst.graph, *inst.index, kExact);
    const FBRelation combo = fb_sim(inst.query, inst.graph, *inst.index, kExact);
    EXPECT_EQ(bas.sets, combo.sets) << "seed " << seed;
  }
}

TEST(DoubleSim, OccurrenceContainmentAndMonotonicity) {
  for (std::uint64_t seed = 200; seed <= 220; ++seed) {
    Instance inst(seed, QueryGenSpec::Shape::any, 0.5);
    const std::vector<NodeSet> ms = match_sets(inst.query, inst.graph);
    const FBRelation fb = fb_sim(inst.query, inst.graph, *inst.index, kExact);
    const auto answer = brute_force_oracle(inst.query, inst.graph, *inst.index);
    std::vector<NodeSet> os(inst.query.num_nodes());
    for (const auto& t : answer)
      for (std::uint32_t qid = 0; qid < inst.query.num_nodes(); ++qid) os[qid].add(t[qid]);
    for (std::uint32_t qid = 0; qid < inst.query.num_nodes(); ++qid) {
      EXPECT_TRUE(os[qid].is_subset_of(fb.sets[qid])) << "seed " << seed;
      EXPECT_TRUE(fb.sets[qid].is_subset_of(ms[qid])) << "seed " << seed;
    }
    // A capped run must sit between the exact relation and ms.
    SimOptions capped = kExact;
    capped.pass_cap = 1;
    const FBRelation rough = fb_sim_bas(inst.query, inst.graph, *inst.index, capped);
    for (std::uint32_t qid = 0; qid < inst.query.num_nodes(); ++qid)
      EXPECT_TRUE(fb.sets[qid].is_subset_of(rough.sets[qid])) << "seed " << seed;
  }
}

TEST(DoubleSim, TogglesNeverChangeTheSets) {
  for (std::uint64_t seed = 300; seed <= 320; ++seed) {
    Instance inst(seed, seed % 2 ? QueryGenSpec::Shape::cyclic : QueryGenSpec::Shape::dag, 0.5);
    for (auto cap : {std::optional<std::uint32_t>{}, std::optional<std::uint32_t>{3},
                     std::optional<std::uint32_t>{1}}) {
      SimOptions on = kExact;
      on.pass_cap = cap;
      SimOptions off = kAllOff;
      off.pass_cap = cap;
      EXPECT_EQ(fb_sim(inst.query, inst.graph, *inst.index, on).sets,
                fb_sim(inst.query, inst.graph, *inst.index, off).sets)
          << "seed " << seed;
      EXPECT_EQ(fb_sim_bas(inst.query, inst.graph, *inst.index, on).sets,
                fb_sim_bas(inst.query, inst.graph, *inst.index, off).sets)
          << "seed " << seed;
    }
  }
}

TEST(DoubleSim, DecomposeDagClassifiesBackEdges) {
  const PatternQuery acyclic = PatternQuery::parse_text(testing::kExampleQueryText);
  EXPECT_TRUE(decompose_dag(acyclic).back_edges.empty());

  const PatternQuery tri = PatternQuery::parse_text("n 0 a\nn 1 b\nn 2 c\nd 0 1\nd 1 2\nd 2 0\n");
  const DagDecomposition dec = decompose_dag(tri);
  ASSERT_EQ(dec.back_edges.size(), 1u);
  EXPECT_EQ(dec.back_edges[0], (QueryEdge{2, 0, EdgeKind::direct}));
  EXPECT_EQ(dec.dag_edges.size(), 2u);
}

TEST(DoubleSim, DecomposeDagLeavesAcyclicPart) {
  for (std::uint64_t seed = 400; seed <= 430; ++seed) {
    QueryGenSpec spec;
    spec.nodes = 6;
    spec.extra_edges = 4;
    spec.reachability_prob = 0.5;
    spec.label_pool = {"a", "b"};
    spec.seed = seed;
    spec.shape = QueryGenSpec::Shape::cyclic;
    const PatternQuery q = random_query(spec);
    const DagDecomposition dec = decompose_dag(q);
    EXPECT_EQ(dec.dag_edges.size() + dec.back_edges.size(), q.edges().size());
    const PatternQuery dag_part = PatternQuery::make_unchecked(q.nodes(), dec.dag_edges);
    EXPECT_TRUE(dag_part.is_dag()) << "seed " << seed;
    EXPECT_EQ(dec.topo_order.size(), q.num_nodes());
  }
}

TEST(DoubleSim, BatchDirectCheckEqualsNaiveLoop) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 20; ++round) {
    const DataGraph g = random_graph({40, 160, 2, 500 + static_cast<std::uint64_t>(round)});
    std::uniform_int_distribution<NodeId> dist(0, static_cast<NodeId>(g.num_nodes() - 1));
    NodeSet candidates, frontier;
    for (int i = 0; i < 15; ++i) candidates.add(dist(rng));
    for (int i = 0; i < 10; ++i) frontier.add(dist(rng));
    for (Direction dir : {Direction::forward, Direction::backward}) {
      const NodeSet got = batch_direct_check(candidates, frontier, dir, g);
      NodeSet expect;
      candidates.for_each([&](NodeId c) {
        bool hit = false;
        frontier.for_each([&](NodeId f) {
          if (g.adjacency(f, dir).contains(c)) hit = true;
        });
        if (hit) expect.add(c);
      });
      EXPECT_EQ(got, expect) << "round " << round;
    }
  }
  // Empty frontier yields the empty set.
  const DataGraph g = random_graph({10, 20, 2, 1});
  EXPECT_TRUE(batch_direct_check(NodeSet{0, 1}, NodeSet(), Direction::forward, g).empty());
}

}  // namespace
}  // namespace rigmatch
