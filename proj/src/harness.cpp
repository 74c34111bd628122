#include "rigmatch/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "rigmatch/errors.hpp"
#include "rigmatch/generator.hpp"

namespace rigmatch {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::vector<NodeId>> collect_sorted(const PatternQuery& q,
                                                const RuntimeIndexGraph& rig,
                                                const SearchOrder& order) {
  std::vector<std::vector<NodeId>> tuples;
  mjoin(q, rig, order, EnumLimits{}, [&](std::span<const NodeId> t) {
    tuples.emplace_back(t.begin(), t.end());
    return true;
  });
  std::sort(tuples.begin(), tuples.end());
  return tuples;
}

std::optional<SearchOrder> make_order(const PatternQuery& q, const RuntimeIndexGraph& rig,
                                      const std::string& spec, std::string& error) {
  try {
    if (spec == "jo") return order_jo(q, rig);
    if (spec == "ri") return order_ri(q);
    std::vector<std::uint32_t> seq;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      seq.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
    return explicit_order(q, std::move(seq));
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

void dump_sim_sets(const PatternQuery& q, const DataGraph& g, const std::vector<NodeSet>& sets,
                   std::ostream& out) {
  for (std::uint32_t qid = 0; qid < q.num_nodes(); ++qid) {
    std::vector<NodeId> ids;
    sets[qid].for_each([&](NodeId v) { ids.push_back(g.external_id(v)); });
    std::sort(ids.begin(), ids.end());
    out << "fb " << qid << ' ' << q.label_of(qid) << " :";
    for (NodeId v : ids) out << ' ' << v;
    out << '\n';
  }
}

void dump_rig_text(const PatternQuery& q, const DataGraph& g, const RuntimeIndexGraph& rig,
                   std::ostream& out) {
  // Partition listing first (external ids), then the k-partite graph itself in
  // the data-graph text format with dense RIG node ids assigned partition by
  // partition in the listed order.
  std::vector<std::map<NodeId, std::uint32_t>> rigid(q.num_nodes());  // ext id -> rig id
  std::uint32_t next = 0;
  for (std::uint32_t qid = 0; qid < q.num_nodes(); ++qid) {
    std::vector<NodeId> ids;
    rig.cos(qid).for_each([&](NodeId v) { ids.push_back(g.external_id(v)); });
    std::sort(ids.begin(), ids.end());
    out << "c " << qid;
    for (NodeId v : ids) {
      out << ' ' << v;
      rigid[qid].emplace(v, next++);
    }
    out << '\n';
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t ei = 0; ei < q.edges().size(); ++ei) {
    const QueryEdge& e = q.edges()[ei];
    for (const auto& [v, row] : rig.edge_adj(ei).fwd) {
      const std::uint32_t from = rigid[e.tail].at(g.external_id(v));
      row.for_each([&](NodeId w) {
        edges.emplace_back(from, rigid[e.head].at(g.external_id(w)));
      });
    }
  }
  std::sort(edges.begin(), edges.end());
  out << "t " << next << ' ' << edges.size() << '\n';
  for (std::uint32_t qid = 0; qid < q.num_nodes(); ++qid)
    for (const auto& [ext, id] : rigid[qid]) out << "v " << id << ' ' << q.label_of(qid) << '\n';
  for (const auto& [a, b] : edges) out << "e " << a << ' ' << b << '\n';
}

struct LoadedGraph {
  DataGraph graph;
  ReachIndex index;
};

std::optional<LoadedGraph> load_graph_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open graph file '" << path << "'\n";
    return std::nullopt;
  }
  try {
    DataGraph g = DataGraph::load(in);
    ReachIndex ix = ReachIndex::build(g);
    return LoadedGraph{std::move(g), std::move(ix)};
  } catch (const std::exception& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.graph_path.empty() || cfg.query_paths.empty()) {
    err << "error: query needs a graph and at least one query file\n";
    return kExitUsage;
  }
  auto loaded = load_graph_file(cfg.graph_path, err);
  if (!loaded) return kExitInput;
  const DataGraph& g = loaded->graph;
  const ReachIndex& ix = loaded->index;

  int status = kExitOk;
  for (const std::string& path : cfg.query_paths) {
    if (cfg.query_paths.size() > 1) out << "# file " << path << '\n';
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot open query file '" << path << "'\n";
      return kExitInput;
    }
    PatternQuery parsed;
    try {
      parsed = PatternQuery::parse(in, &err);
    } catch (const std::exception& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      return kExitInput;
    }

    const auto match_start = Clock::now();
    const PatternQuery q = parsed.transitive_reduction();
    if (cfg.sim == SimAlgo::dag && !q.is_dag()) {
      err << "error: --sim dag requires an acyclic query (" << path << " is cyclic)\n";
      return kExitUsage;
    }

    SimOptions sopts;
    sopts.pass_cap = cfg.sim_cap;
    sopts.dirty_flags = cfg.dirty_flags;
    sopts.witness_index = cfg.witness_index;
    sopts.batch_direct = cfg.batch_direct;
    sopts.dag_early_termination = cfg.dag_early_termination;

    std::vector<NodeSet> cos;
    std::uint32_t sim_passes = 0;
    bool sim_exact = true;
    if (cfg.mode == RigMode::match) {
      cos = match_sets(q, g);
    } else {
      FBRelation fb;
      switch (cfg.sim) {
        case SimAlgo::bas:
          fb = fb_sim_bas(q, g, ix, sopts);
          break;
        case SimAlgo::dag:
          fb = fb_sim_dag(q, g, ix, sopts);
          break;
        case SimAlgo::aut:
          fb = fb_sim(q, g, ix, sopts);
          break;
      }
      sim_passes = fb.pass_count;
      sim_exact = fb.exact;
      cos = std::move(fb.sets);
    }
    if (cfg.dump_sim) dump_sim_sets(q, g, cos, out);

    RuntimeIndexGraph rig =
        build_rig_from_cos(q, g, ix, std::move(cos), cfg.mode == RigMode::refined,
                           cfg.dag_early_termination);
    if (cfg.dump_rig) dump_rig_text(q, g, rig, out);

    std::optional<SearchOrder> order;
    if (!rig.empty()) {
      std::string order_error;
      order = make_order(q, rig, cfg.order_spec, order_error);
      if (!order) {
        err << "error: invalid --order: " << order_error << '\n';
        return kExitUsage;
      }
    }
    const double match_ms = ms_since(match_start);

    out << "# q";
    for (const QueryNode& node : q.nodes()) out << ' ' << node.qid << ':' << node.label;
    out << '\n';

    const auto enum_start = Clock::now();
    EnumReport report;
    if (rig.empty()) {
      report.matches = 0;
      report.completed = true;
    } else if (cfg.output == RunConfig::Output::tuples) {
      report = mjoin(q, rig, *order, cfg.limits, [&](std::span<const NodeId> t) {
        for (std::size_t i = 0; i < t.size(); ++i)
          out << (i == 0 ? "" : "\t") << g.external_id(t[i]);
        out << '\n';
        return true;
      });
    } else {
      report = count_matches(q, rig, *order, cfg.limits);
    }
    const double enum_ms = ms_since(enum_start);

    if (cfg.output == RunConfig::Output::stats) {
      const RigStats stats = rig_stats(rig, g);
      out << "# stats graph_nodes=" << g.num_nodes() << " graph_edges=" << g.num_edges()
          << " query_nodes=" << q.num_nodes() << " query_edges=" << q.edges().size() << '\n';
      out << "# stats sim_passes=" << sim_passes << " sim_exact=" << (sim_exact ? "true" : "false")
          << " rig_nodes=" << stats.nodes << " rig_edges=" << stats.edges << " rig_ratio="
          << std::fixed << std::setprecision(6) << stats.ratio << std::defaultfloat << '\n';
      out << "# stats match_ms=" << std::fixed << std::setprecision(3) << match_ms
          << " enum_ms=" << enum_ms << std::defaultfloat << '\n';
    }
    out << "# matches=" << report.matches << " completed="
        << (report.completed ? "true" : "false") << " elapsed_ms="
        << std::chrono::duration_cast<std::chrono::milliseconds>(report.elapsed).count() << '\n';
    if (!report.completed) status = kExitLimits;
  }
  return status;
}

FuzzInstanceResult check_fuzz_instance(const PatternQuery& q, const DataGraph& g,
                                       const ReachIndex& ix, bool corrupt_reduction) {
  auto fail = [](std::string detail) { return FuzzInstanceResult{false, std::move(detail)}; };

  PatternQuery reduced = q.transitive_reduction();
  if (corrupt_reduction && reduced.edges().size() >= 2) {
    std::vector<QueryEdge> edges = reduced.edges();
    edges.pop_back();
    reduced = PatternQuery::make_unchecked(reduced.nodes(), std::move(edges));
  }

  std::vector<std::vector<NodeId>> oracle_q, oracle_r;
  try {
    oracle_q = brute_force_oracle(q, g, ix);
    oracle_r = brute_force_oracle(reduced, g, ix);
  } catch (const OracleGuardError& e) {
    return fail(std::string("oracle guard tripped: ") + e.what());
  }
  if (oracle_q != oracle_r) return fail("transitive reduction changed the answer set");

  // Uniqueness of the double simulation across algorithm variants (exact mode).
  const SimOptions exact_on{};
  const SimOptions exact_off{std::nullopt, false, false, false, false};
  const SimOptions cap3_on{3, true, true, true, true};
  const SimOptions cap3_off{3, false, false, false, false};
  const FBRelation fb = fb_sim(reduced, g, ix, exact_on);
  {
    const FBRelation bas = fb_sim_bas(reduced, g, ix, exact_on);
    std::size_t max_ms = 0;
    for (const NodeSet& s : match_sets(reduced, g)) max_ms = std::max(max_ms, s.size());
    if (bas.pass_count > reduced.num_nodes() * max_ms + 1)
      return fail("fb_sim_bas pass count exceeds the |V_Q| x |I_max| bound");
    if (bas.sets != fb.sets) return fail("fb_sim_bas and fb_sim disagree in exact mode");
    if (reduced.is_dag()) {
      const FBRelation dag = fb_sim_dag(reduced, g, ix, exact_on);
      if (dag.sets != fb.sets) return fail("fb_sim_dag and fb_sim disagree in exact mode");
    }
    if (fb_sim(reduced, g, ix, exact_off).sets != fb.sets)
      return fail("optimization toggles changed the exact simulation sets");
    if (fb_sim(reduced, g, ix, cap3_on).sets != fb_sim(reduced, g, ix, cap3_off).sets)
      return fail("optimization toggles changed the capped simulation sets");
  }

  // Sandwich on nodes: os(q) ⊆ FB(q) ⊆ ms(q).
  const std::vector<NodeSet> ms = match_sets(reduced, g);
  std::vector<NodeSet> os(reduced.num_nodes());
  for (const auto& tuple : oracle_r)
    for (std::uint32_t qid = 0; qid < reduced.num_nodes(); ++qid) os[qid].add(tuple[qid]);
  for (std::uint32_t qid = 0; qid < reduced.num_nodes(); ++qid) {
    if (!os[qid].is_subset_of(fb.sets[qid])) return fail("os(q) not within FB(q)");
    if (!fb.sets[qid].is_subset_of(ms[qid])) return fail("FB(q) not within ms(q)");
  }

  const RuntimeIndexGraph refined = build_rig(reduced, g, ix, RigMode::refined, exact_on);
  const RuntimeIndexGraph match = build_rig(reduced, g, ix, RigMode::match, exact_on);

  // Sandwich on edges plus refined ⊆ match, against the naive ms(e).
  EdgeMatchTester tester(g, ix);
  for (std::size_t ei = 0; ei < reduced.edges().size(); ++ei) {
    const QueryEdge& e = reduced.edges()[ei];
    std::set<std::pair<NodeId, NodeId>> ms_pairs, cos_pairs, match_pairs, os_pairs;
    ms[e.tail].for_each([&](NodeId u) {
      ms[e.head].for_each([&](NodeId v) {
        if (tester.matches(e, u, v)) ms_pairs.emplace(u, v);
      });
    });
    for (const auto& [v, row] : refined.edge_adj(ei).fwd)
      row.for_each([&](NodeId w) { cos_pairs.emplace(v, w); });
    for (const auto& [v, row] : match.edge_adj(ei).fwd)
      row.for_each([&](NodeId w) { match_pairs.emplace(v, w); });
    for (const auto& tuple : oracle_r) os_pairs.emplace(tuple[e.tail], tuple[e.head]);

    if (!std::includes(cos_pairs.begin(), cos_pairs.end(), os_pairs.begin(), os_pairs.end()))
      return fail("os(e) not within cos(e) on the refined RIG");
    if (!std::includes(ms_pairs.begin(), ms_pairs.end(), cos_pairs.begin(), cos_pairs.end()))
      return fail("cos(e) not within ms(e) on the refined RIG");
    if (!std::includes(match_pairs.begin(), match_pairs.end(), cos_pairs.begin(),
                       cos_pairs.end()))
      return fail("refined RIG edge set not within match RIG edge set");
    if (!std::includes(ms_pairs.begin(), ms_pairs.end(), match_pairs.begin(),
                       match_pairs.end()))
      return fail("match RIG edge set not within ms(e)");
  }
  for (std::uint32_t qid = 0; qid < reduced.num_nodes(); ++qid)
    if (!refined.cos(qid).is_subset_of(match.cos(qid)))
      return fail("refined cos(q) not within match cos(q)");

  // Enumeration equals the oracle under both orders and both RIG modes.
  for (const RuntimeIndexGraph* rig : {&refined, &match}) {
    if (rig->empty()) {
      if (!oracle_r.empty()) return fail("empty RIG but the oracle found occurrences");
      continue;
    }
    for (const char* spec : {"jo", "ri"}) {
      const SearchOrder order =
          spec == std::string("jo") ? order_jo(reduced, *rig) : order_ri(reduced);
      if (collect_sorted(reduced, *rig, order) != oracle_r)
        return fail(std::string("MJoin answer differs from the oracle (order ") + spec + ")");
    }
  }

  // Optimization transparency end to end: capped/un-tuned pipelines keep the
  // same answer set.
  for (const SimOptions* opts : {&cap3_on, &cap3_off, &exact_off}) {
    const RuntimeIndexGraph rig = build_rig(reduced, g, ix, RigMode::refined, *opts);
    if (rig.empty()) {
      if (!oracle_r.empty()) return fail("empty RIG under toggled options");
      continue;
    }
    if (collect_sorted(reduced, rig, order_jo(reduced, rig)) != oracle_r)
      return fail("toggled options changed the MJoin answer set");
  }

  // Limit semantics on a nonempty answer.
  if (!refined.empty() && oracle_r.size() >= 2) {
    const SearchOrder order = order_jo(reduced, refined);
    EnumLimits limits;
    limits.max_matches = oracle_r.size() / 2;
    EnumReport capped = count_matches(reduced, refined, order, limits);
    if (capped.matches != *limits.max_matches || capped.completed)
      return fail("max_matches cap not honored");
    limits.max_matches = oracle_r.size();
    EnumReport full = count_matches(reduced, refined, order, limits);
    if (full.matches != oracle_r.size() || !full.completed)
      return fail("cap equal to the total must complete");
  }

  return {};
}

int cmd_fuzz(const FuzzConfig& cfg, std::ostream& out, std::ostream& err) {
  std::uint64_t seed = cfg.seed;
  if (const char* env = std::getenv("RIGMATCH_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: RIGMATCH_SEED is not a number: '" << env << "'\n";
      return kExitUsage;
    }
  }

  for (std::uint32_t i = 0; i < cfg.instances; ++i) {
    const std::uint64_t iseed = seed + i;
    std::mt19937_64 meta(iseed);
    GraphGenSpec gspec;
    gspec.nodes = 8 + static_cast<std::uint32_t>(meta() % std::max(1u, cfg.max_graph_nodes - 7));
    gspec.labels = 1 + static_cast<std::uint32_t>(meta() % cfg.max_labels);
    gspec.edges = std::uint64_t{gspec.nodes} * (1 + meta() % 4);
    gspec.seed = iseed;
    const DataGraph g = random_graph(gspec);
    const ReachIndex ix = ReachIndex::build(g);

    std::vector<std::string> pool;
    for (Label l = 0; l < g.num_labels(); ++l) pool.push_back(g.label_name(l));
    if (iseed % 7 == 0) pool.push_back("absent");  // exercise the empty-ms path

    const double probs[] = {0.0, 0.5, 1.0};
    QueryGenSpec qspec;
    qspec.nodes = cfg.min_query_nodes +
                  static_cast<std::uint32_t>(meta() % (cfg.max_query_nodes - cfg.min_query_nodes + 1));
    qspec.extra_edges = static_cast<std::uint32_t>(meta() % 3);
    qspec.reachability_prob = probs[iseed % 3];
    qspec.label_pool = pool;
    qspec.shape = (iseed % 4 == 3) ? QueryGenSpec::Shape::cyclic : QueryGenSpec::Shape::any;

    // Keep the oracle guard satisfied; shrink deterministically if needed.
    PatternQuery q;
    bool have_query = false;
    for (std::uint32_t attempt = 0; !have_query; ++attempt) {
      qspec.seed = iseed * 1000 + attempt;
      if (attempt > 0 && attempt % 4 == 0 && qspec.nodes > 2) --qspec.nodes;
      q = random_query(qspec);
      double product = 1.0;
      for (const QueryNode& node : q.nodes())
        product *= static_cast<double>(g.inverted_list(node.label).size());
      if (product <= 0.9e7) have_query = true;
    }

    const FuzzInstanceResult res = check_fuzz_instance(q, g, ix, cfg.corrupt_reduction);
    if (!res.ok) {
      err << "instance " << i << " FAILED: " << res.detail << '\n'
          << "reproduce with: rigmatch fuzz --seed " << iseed << " --instances 1\n";
      return 1;
    }
  }
  out << cfg.instances << "/" << cfg.instances << " instances passed (base seed " << seed
      << ")\n";
  return kExitOk;
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream in(cfg.workload_path);
  if (!in) {
    err << "error: cannot open workload file '" << cfg.workload_path << "'\n";
    return kExitInput;
  }
  out << "graph,query,nodes,edges,sim_passes,rig_nodes,rig_edges,rig_ratio,match_ms,enum_ms,"
         "matches,completed\n";

  std::string cached_path;
  std::optional<LoadedGraph> cached;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string graph_path, query_path;
    ls >> graph_path >> query_path;
    if (query_path.empty()) {
      err << "error: malformed workload line: '" << line << "'\n";
      continue;
    }

    auto emit_failure = [&](const std::string& why) {
      err << "error: " << graph_path << ' ' << query_path << ": " << why << '\n';
      out << graph_path << ',' << query_path << ",0,0,0,0,0,0,0,0,0,false\n";
    };

    if (graph_path != cached_path) {
      cached = load_graph_file(graph_path, err);
      cached_path = graph_path;
      if (!cached) {
        out << graph_path << ',' << query_path << ",0,0,0,0,0,0,0,0,0,false\n";
        continue;
      }
    }
    if (!cached) {
      out << graph_path << ',' << query_path << ",0,0,0,0,0,0,0,0,0,false\n";
      continue;
    }

    try {
      std::ifstream qin(query_path);
      if (!qin) throw std::runtime_error("cannot open query file");
      const PatternQuery parsed = PatternQuery::parse(qin, &err);

      const auto match_start = Clock::now();
      const PatternQuery q = parsed.transitive_reduction();
      SimOptions sopts;
      sopts.pass_cap = cfg.sim_cap;
      RuntimeIndexGraph rig = build_rig(q, cached->graph, cached->index, cfg.mode, sopts,
                                        cfg.sim);
      std::optional<SearchOrder> order;
      std::string order_error;
      if (!rig.empty()) {
        order = make_order(q, rig, cfg.order_spec, order_error);
        if (!order) throw std::runtime_error("invalid order: " + order_error);
      }
      const double match_ms = ms_since(match_start);

      const auto enum_start = Clock::now();
      EnumReport report;
      if (!rig.empty()) report = count_matches(q, rig, *order, cfg.limits);
      const double enum_ms = ms_since(enum_start);

      const RigStats stats = rig_stats(rig, cached->graph);
      out << graph_path << ',' << query_path << ',' << cached->graph.num_nodes() << ','
          << cached->graph.num_edges() << ',' << rig.sim_passes() << ',' << stats.nodes << ','
          << stats.edges << ',' << std::fixed << std::setprecision(6) << stats.ratio
          << std::defaultfloat << ',' << std::fixed << std::setprecision(3) << match_ms << ','
          << enum_ms << std::defaultfloat << ',' << report.matches << ','
          << (report.completed ? "true" : "false") << '\n';
    } catch (const std::exception& e) {
      emit_failure(e.what());
    }
  }
  return kExitOk;
}

int cmd_convert(const std::string& input_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(input_path);
  if (!in) {
    err << "error: cannot open input file '" << input_path << "'\n";
    return kExitInput;
  }
  std::map<std::uint64_t, std::string> nodes;  // original id -> label
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
      std::istringstream ls(line);
      std::string tag;
      ls >> tag;
      if (tag == "t") continue;  // tolerated and recomputed
      if (tag == "v") {
        std::uint64_t id;
        std::string label;
        if (!(ls >> id >> label)) throw ParseError(line_no, "expected 'v <id> <label>'");
        if (!nodes.emplace(id, label).second)
          throw ParseError(line_no, "duplicate node id " + std::to_string(id));
      } else if (tag == "e") {
        std::uint64_t s, d;
        if (!(ls >> s >> d)) throw ParseError(line_no, "expected 'e <src> <dst>'");
        edges.emplace_back(s, d);
      } else {
        throw ParseError(line_no, "unknown directive '" + tag + "'");
      }
    }
    std::map<std::uint64_t, std::uint64_t> dense;
    for (const auto& [id, label] : nodes) dense.emplace(id, dense.size());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> mapped;
    mapped.reserve(edges.size());
    for (const auto& [s, d] : edges) {
      auto si = dense.find(s);
      auto di = dense.find(d);
      if (si == dense.end() || di == dense.end())
        throw ValidationError("edge (" + std::to_string(s) + ", " + std::to_string(d) +
                              ") references a node without a 'v' line");
      mapped.emplace_back(si->second, di->second);
    }
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());

    out << "t " << nodes.size() << ' ' << mapped.size() << '\n';
    std::uint64_t next = 0;
    for (const auto& [id, label] : nodes) out << "v " << next++ << ' ' << label << '\n';
    for (const auto& [s, d] : mapped) out << "e " << s << ' ' << d << '\n';
  } catch (const std::exception& e) {
    err << "error: " << input_path << ": " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace rigmatch
