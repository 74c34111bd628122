#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "rigmatch/harness.hpp"

namespace {

// "--sim-cap exact | <N>" -> pass cap option.
bool parse_sim_cap(const std::string& text, std::optional<std::uint32_t>& cap,
                   std::string& error) {
  if (text == "exact") {
    cap = std::nullopt;
    return true;
  }
  try {
    const unsigned long value = std::stoul(text);
    cap = static_cast<std::uint32_t>(value);
    return true;
  } catch (const std::exception&) {
    error = "--sim-cap expects 'exact' or a pass count, got '" + text + "'";
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigmatch: hybrid graph pattern matching over a runtime index graph"};
  app.require_subcommand(1);

  // query
  auto* query = app.add_subcommand("query", "evaluate a pattern query on a data graph");
  rigmatch::RunConfig run;
  std::string sim_name = "auto";
  std::string mode_name = "refined";
  std::string output_name = "tuples";
  std::string sim_cap_text = "3";
  std::uint64_t max_matches = 0;
  std::uint64_t timeout_ms = 0;
  query->add_option("--graph,-g", run.graph_path, "data graph file")->required();
  query->add_option("--query,-q", run.query_paths, "query file(s)")->required();
  query->add_option("--mode", mode_name, "refined|match")->capture_default_str();
  query->add_option("--sim", sim_name, "bas|dag|auto")->capture_default_str();
  query->add_option("--sim-cap", sim_cap_text, "simulation pass cap: exact|N")
      ->capture_default_str();
  query->add_option("--order", run.order_spec, "jo|ri|<comma-separated qids>")
      ->capture_default_str();
  query->add_option("--max-matches", max_matches, "stop after this many matches (0 = all)");
  query->add_option("--timeout-ms", timeout_ms, "enumeration wall budget (0 = none)");
  query->add_option("--output", output_name, "tuples|count|stats")->capture_default_str();
  query->add_flag("--dump-sim", run.dump_sim, "print the simulation sets");
  query->add_flag("--dump-rig", run.dump_rig, "print the runtime index graph");
  query->add_flag("!--no-dirty-flags", run.dirty_flags, "disable dirty-flag skipping");
  query->add_flag("!--no-witness-index", run.witness_index, "disable the witness index");
  query->add_flag("!--no-batch-direct", run.batch_direct, "disable batched direct checks");
  query->add_flag("!--no-early-termination", run.dag_early_termination,
                  "disable DAG early expansion termination");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "random instances through the invariant suite");
  rigmatch::FuzzConfig fz;
  fuzz->add_option("--seed", fz.seed, "base seed (env RIGMATCH_SEED overrides)")
      ->capture_default_str();
  fuzz->add_option("--instances", fz.instances, "instance count")->capture_default_str();
  fuzz->add_option("--max-graph-nodes", fz.max_graph_nodes, "graph size bound")
      ->capture_default_str();
  fuzz->add_option("--max-labels", fz.max_labels, "label alphabet bound")->capture_default_str();
  fuzz->add_option("--min-query-nodes", fz.min_query_nodes, "smallest query")
      ->capture_default_str();
  fuzz->add_option("--max-query-nodes", fz.max_query_nodes, "largest query")
      ->capture_default_str();
  fuzz->add_flag("--mutate", fz.corrupt_reduction,
                 "negative control: corrupt the reduction and expect a report");

  // bench
  auto* bench = app.add_subcommand("bench", "run a workload and emit per-query CSV");
  rigmatch::BenchConfig bc;
  std::string bench_sim = "auto";
  std::string bench_mode = "refined";
  std::string bench_cap = "3";
  std::uint64_t bench_max = 10000000;   // the experiment preset
  std::uint64_t bench_timeout = 600000;  // 10 minutes
  bench->add_option("workload", bc.workload_path, "file of '<graph> <query>' lines")
      ->required();
  bench->add_option("--mode", bench_mode, "refined|match")->capture_default_str();
  bench->add_option("--sim", bench_sim, "bas|dag|auto")->capture_default_str();
  bench->add_option("--sim-cap", bench_cap, "exact|N")->capture_default_str();
  bench->add_option("--order", bc.order_spec, "jo|ri|<explicit>")->capture_default_str();
  bench->add_option("--max-matches", bench_max, "per-query match cap")->capture_default_str();
  bench->add_option("--timeout-ms", bench_timeout, "per-query wall budget")
      ->capture_default_str();

  // convert
  auto* convert = app.add_subcommand("convert", "SNAP-style v/e file to the graph text format");
  std::string convert_in;
  convert->add_option("input", convert_in, "input file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rigmatch::kExitOk : rigmatch::kExitUsage;
  }

  auto parse_sim = [](const std::string& name, rigmatch::SimAlgo& algo) {
    if (name == "bas") algo = rigmatch::SimAlgo::bas;
    else if (name == "dag") algo = rigmatch::SimAlgo::dag;
    else if (name == "auto") algo = rigmatch::SimAlgo::aut;
    else return false;
    return true;
  };
  auto parse_mode = [](const std::string& name, rigmatch::RigMode& mode) {
    if (name == "refined") mode = rigmatch::RigMode::refined;
    else if (name == "match") mode = rigmatch::RigMode::match;
    else return false;
    return true;
  };

  if (query->parsed()) {
    std::string error;
    if (!parse_mode(mode_name, run.mode) || !parse_sim(sim_name, run.sim)) {
      std::cerr << "error: bad --mode or --sim value\n";
      return rigmatch::kExitUsage;
    }
    if (!parse_sim_cap(sim_cap_text, run.sim_cap, error)) {
      std::cerr << "error: " << error << '\n';
      return rigmatch::kExitUsage;
    }
    if (output_name == "tuples") run.output = rigmatch::RunConfig::Output::tuples;
    else if (output_name == "count") run.output = rigmatch::RunConfig::Output::count;
    else if (output_name == "stats") run.output = rigmatch::RunConfig::Output::stats;
    else {
      std::cerr << "error: bad --output value\n";
      return rigmatch::kExitUsage;
    }
    if (max_matches > 0) run.limits.max_matches = max_matches;
    if (timeout_ms > 0) run.limits.timeout = std::chrono::milliseconds(timeout_ms);
    return rigmatch::cmd_query(run, std::cout, std::cerr);
  }
  if (fuzz->parsed()) return rigmatch::cmd_fuzz(fz, std::cout, std::cerr);
  if (bench->parsed()) {
    std::string error;
    if (!parse_mode(bench_mode, bc.mode) || !parse_sim(bench_sim, bc.sim)) {
      std::cerr << "error: bad --mode or --sim value\n";
      return rigmatch::kExitUsage;
    }
    if (!parse_sim_cap(bench_cap, bc.sim_cap, error)) {
      std::cerr << "error: " << error << '\n';
      return rigmatch::kExitUsage;
    }
    if (bench_max > 0) bc.limits.max_matches = bench_max;
    if (bench_timeout > 0) bc.limits.timeout = std::chrono::milliseconds(bench_timeout);
    return rigmatch::cmd_bench(bc, std::cout, std::cerr);
  }
  return rigmatch::cmd_convert(convert_in, std::cout, std::cerr);
}
