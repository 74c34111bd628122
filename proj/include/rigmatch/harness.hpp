#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rigmatch/mjoin.hpp"
#include "rigmatch/oracle.hpp"

namespace rigmatch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitLimits = 3;

struct RunConfig {
  std::string graph_path;
  std::vector<std::string> query_paths;
  RigMode mode = RigMode::refined;
  SimAlgo sim = SimAlgo::aut;
  // Pipeline default is the 3-pass approximation; std::nullopt runs the
  // simulation to its fixpoint.
  std::optional<std::uint32_t> sim_cap = 3;
  bool dirty_flags = true;
  bool witness_index = true;
  bool batch_direct = true;
  bool dag_early_termination = true;
  std::string order_spec = "jo";  // "jo" | "ri" | comma-separated qids
  EnumLimits limits;
  enum class Output { tuples, count, stats } output = Output::tuples;
  bool dump_sim = false;
  bool dump_rig = false;
};

// reduce -> simulate -> build RIG -> order -> enumerate, per query path.
int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct FuzzConfig {
  std::uint64_t seed = 1;  // RIGMATCH_SEED in the environment wins
  std::uint32_t instances = 50;
  std::uint32_t max_graph_nodes = 30;
  std::uint32_t max_labels = 3;
  std::uint32_t min_query_nodes = 3;
  std::uint32_t max_query_nodes = 6;
  // Negative-control hook: sabotage the reduction so the equivalence check
  // must fire.
  bool corrupt_reduction = false;
};

// One generated instance through the full invariant suite; detail carries the
// first violated property.
struct FuzzInstanceResult {
  bool ok = true;
  std::string detail;
};
FuzzInstanceResult check_fuzz_instance(const PatternQuery& q, const DataGraph& g,
                                       const ReachIndex& ix, bool corrupt_reduction = false);

int cmd_fuzz(const FuzzConfig& cfg, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::string workload_path;  // lines: <graph-path> <query-path>
  RigMode mode = RigMode::refined;
  SimAlgo sim = SimAlgo::aut;
  std::optional<std::uint32_t> sim_cap = 3;
  std::string order_spec = "jo";
  EnumLimits limits;  // callers preset the 1e7 / 600 s experiment shape
};

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err);

// SNAP-style v/e lines (arbitrary sparse ids, no header) to the canonical
// graph text format.
int cmd_convert(const std::string& input_path, std::ostream& out, std::ostream& err);

}  // namespace rigmatch
