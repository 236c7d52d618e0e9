// Copyright 2026 The pathkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// pathkit: path sampling, trajectory metrics, baselines, transcript
// alignment and grounding masks over indoor panorama navigation graphs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pathkit/baselines.hpp"
#include "pathkit/error.hpp"
#include "pathkit/grounding.hpp"
#include "pathkit/io.hpp"
#include "pathkit/metrics.hpp"
#include "pathkit/navgraph.hpp"
#include "pathkit/sampler.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace pathkit;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInternalError = 2;

void note(const std::string& line) {
  std::cerr << "[pathkit] " << line << "\n";
}

std::vector<PanoGraph> load_graphs(const std::vector<std::string>& paths) {
  std::vector<PanoGraph> graphs;
  for (const std::string& p : paths) {
    graphs.push_back(load_pano_graph_file(p));
    note("loaded " + p + ": " + graphs.back().building_id() + ", " +
         std::to_string(graphs.back().size()) + " panos, " +
         std::to_string(graphs.back().edge_count()) + " edges");
  }
  return graphs;
}

const PanoGraph& graph_for(const std::vector<PanoGraph>& graphs,
                           const std::string& building_id) {
  for (const PanoGraph& g : graphs) {
    if (g.building_id() == building_id) return g;
  }
  throw Error("no graph supplied for building " + building_id);
}

int cmd_synth(const SynthSpec& spec, const std::string& out_path) {
  PanoGraph g = generate_synthetic_house(spec);
  atomic_write_file(out_path, pano_graph_to_json(g));
  note("synth: wrote " + out_path + " (" + std::to_string(g.size()) +
       " panos)");
  return kExitOk;
}

int cmd_sample(const std::vector<std::string>& graph_paths,
               const SamplerConfig& cfg, const std::string& out_path) {
  std::vector<PanoGraph> graphs = load_graphs(graph_paths);
  PathDataset ds = sample_dataset(graphs, cfg);
  std::ostringstream out;
  write_guide_paths(out, ds.paths);
  atomic_write_file(out_path, out.str());
  note("sample: selected " + std::to_string(ds.paths.size()) + "/" +
       std::to_string(ds.requested) + " paths -> " + out_path);
  if (ds.paths.size() < ds.requested) {
    note("sample: shortfall of " +
         std::to_string(ds.requested - ds.paths.size()) +
         " (pool exhausted under constraints)");
  }
  return kExitOk;
}

int cmd_stats(const std::string& paths_file,
              const std::vector<std::string>& graph_paths,
              const std::string& out_path) {
  std::vector<PanoGraph> graphs = load_graphs(graph_paths);
  std::vector<GuidePath> paths = read_guide_paths_file(paths_file);
  PathDataset ds;
  ds.paths = paths;
  ds.requested = paths.size();
  for (const GuidePath& p : ds.paths) ds.coverage.add(p);
  StatsReport report = dataset_stats(ds, graphs);
  atomic_write_file(out_path, stats_report_to_json(report));

  auto csv_path = [&](const std::string& tag) {
    std::filesystem::path p(out_path);
    std::filesystem::path sibling = p.parent_path();
    sibling /= p.stem().string() + "." + tag + ".csv";
    return sibling.string();
  };
  atomic_write_file(csv_path("length_m"),
                    histogram_to_csv(report.length_m_hist, "meters", "paths"));
  atomic_write_file(csv_path("length_edges"),
                    histogram_to_csv(report.edges_hist, "edges", "paths"));
  atomic_write_file(csv_path("visit_counts"),
                    histogram_to_csv(report.visit_hist, "visits", "panos"));
  note("stats: " + std::to_string(report.count) + " paths -> " + out_path);
  return kExitOk;
}

int cmd_eval(const std::vector<std::string>& graph_paths,
             const std::string& paths_file, const std::string& executed_file,
             double d_th, bool ne_euclidean, const std::string& out_path) {
  std::vector<PanoGraph> graphs = load_graphs(graph_paths);
  std::vector<GuidePath> refs = read_guide_paths_file(paths_file);
  std::vector<ExecutedPath> runs = read_executed_file(executed_file);
  std::map<std::string, const GuidePath*> by_id;
  for (const GuidePath& r : refs) by_id[r.path_id] = &r;

  EvalOptions opts;
  opts.d_th = d_th;
  opts.ne_euclidean = ne_euclidean;
  std::vector<EpisodeResult> results;
  std::vector<MetricsReport> reports;
  for (const ExecutedPath& run : runs) {
    auto it = by_id.find(run.path_id);
    if (it == by_id.end()) {
      throw Error("executed path references unknown path_id " + run.path_id);
    }
    const PanoGraph& g = graph_for(graphs, it->second->building_id);
    Episode ep{*it->second, run.nodes};
    MetricsReport m = evaluate_episode(g, ep, opts);
    results.push_back({run.path_id, m});
    reports.push_back(m);
  }
  if (reports.empty()) throw Error("no executed paths to evaluate");
  AggregateReport agg = aggregate(reports);
  atomic_write_file(out_path, eval_report_to_json(results, agg, d_th));
  note("eval: " + std::to_string(reports.size()) + " episodes, ndtw=" +
       std::to_string(100.0 * agg.ndtw) + " sr=" +
       std::to_string(100.0 * agg.sr) + " -> " + out_path);
  return kExitOk;
}

int cmd_baseline(const std::string& policy_name,
                 const std::vector<std::string>& graph_paths,
                 const std::string& paths_file, std::size_t steps,
                 std::uint64_t seed, const std::string& out_path) {
  std::vector<PanoGraph> graphs = load_graphs(graph_paths);
  std::vector<GuidePath> refs = read_guide_paths_file(paths_file);
  Policy policy;
  if (policy_name == "random-walk") {
    policy = Policy::RandomWalk;
  } else if (policy_name == "random-straight") {
    policy = Policy::RandomHeadingStraight;
  } else if (policy_name == "oracle-straight") {
    policy = Policy::OracleFirstStepStraight;
  } else {
    throw Error("unknown policy: " + policy_name);
  }
  std::vector<ExecutedPath> runs;
  for (const GuidePath& ref : refs) {
    const PanoGraph& g = graph_for(graphs, ref.building_id);
    PolicyRun run = run_policy(g, policy, ref, steps, seed);
    runs.push_back({ref.path_id, std::move(run.executed)});
  }
  std::ostringstream out;
  write_executed(out, runs);
  atomic_write_file(out_path, out.str());
  note("baseline " + policy_name + ": " + std::to_string(runs.size()) +
       " episodes -> " + out_path);
  return kExitOk;
}

int cmd_align(const std::string& manual_file, const std::string& asr_file,
              const std::string& instruction_id, const std::string& language,
              const std::string& out_path) {
  std::ifstream manual_in(manual_file);
  if (!manual_in) throw Error("cannot open manual transcript: " + manual_file);
  std::ostringstream buf;
  buf << manual_in.rdbuf();
  std::vector<std::string> manual = tokenize_whitespace(buf.str());
  if (manual.empty()) throw Error("manual transcript has no tokens");
  std::vector<TimedToken> asr = read_asr_jsonl_file(asr_file);
  if (asr.empty()) throw Error("asr file has no tokens");
  TimedInstruction instr =
      align_transcript(manual, asr, instruction_id, language);
  atomic_write_file(out_path, timed_instruction_to_json(instr) + "\n");
  note("align: " + std::to_string(manual.size()) + " tokens vs " +
       std::to_string(asr.size()) + " asr tokens -> " + out_path);
  return kExitOk;
}

int cmd_masks(const std::string& trace_file, const std::string& instr_file,
              std::size_t rows, std::size_t cols,
              const std::string& out_path) {
  PoseTrace trace = read_pose_trace_file(trace_file);
  TimedInstruction instr = read_timed_instruction_file(instr_file);
  std::ostringstream out;
  for (std::size_t t = 0; t < trace.path.size(); ++t) {
    TextMask b = text_mask(instr, trace, t);
    VisualMask v = visual_mask(trace, t, rows, cols);
    PooledMask m = pool_mask(v);
    std::size_t lit = 0;
    for (auto bit : v.bits) lit += bit;
    nlohmann::ordered_json j;
    j["step"] = t;
    j["text_mask"] = b.bits;
    j["pooled_mask"] = std::vector<int>(m.bits.begin(), m.bits.end());
    // Raster-weighted, not solid-angle-weighted: cells near the poles
    // count the same as equatorial ones.
    j["observed_fraction"] =
        static_cast<double>(lit) / static_cast<double>(v.bits.size());
    out << j.dump() << "\n";
  }
  atomic_write_file(out_path, out.str());
  note("masks: " + std::to_string(trace.path.size()) + " steps -> " +
       out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pathkit: navigation-graph path sampling, trajectory metrics, simple "
      "baselines, transcript alignment and grounding masks"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic house");
  SynthSpec spec;
  std::string synth_out;
  synth->add_option("--rooms", spec.rooms_per_level, "Rooms per level")
      ->check(CLI::PositiveNumber);
  synth->add_option("--panos-per-room", spec.panos_per_room, "Panos per room")
      ->check(CLI::PositiveNumber);
  synth->add_option("--levels", spec.levels, "Building levels")
      ->check(CLI::PositiveNumber);
  synth->add_option("--spacing", spec.spacing_m, "Pano spacing in meters")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", spec.seed, "Random seed");
  synth->add_option("--building-id", spec.building_id,
                    "Building id (default synth-<seed>)");
  synth->add_option("-o,--out", synth_out, "Output graph JSON")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "Sample guide paths");
  std::vector<std::string> sample_graphs;
  SamplerConfig cfg;
  std::string sample_out;
  sample->add_option("-g,--graph", sample_graphs, "Graph JSON file(s)")
      ->required();
  sample->add_option("--target", cfg.target, "Paths to select")->required();
  sample->add_option("--seed", cfg.seed, "Random seed");
  sample->add_option("--max-rooms", cfg.max_rooms, "Max rooms per path")
      ->check(CLI::PositiveNumber);
  sample->add_option("--max-levels", cfg.max_levels, "Max distinct levels")
      ->check(CLI::PositiveNumber);
  sample->add_option("--max-len-m", cfg.max_len_m, "Max path length (m)")
      ->check(CLI::PositiveNumber);
  sample->add_option("--max-per-building", cfg.max_per_building,
                     "Max selected paths per building");
  sample->add_option("--draws-per-room-path", cfg.draws_per_room_path,
                     "Start/goal draws per room path")
      ->check(CLI::PositiveNumber);
  sample->add_option("-o,--out", sample_out, "Output paths JSONL")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  std::string stats_paths, stats_out;
  std::vector<std::string> stats_graphs;
  stats->add_option("-p,--paths", stats_paths, "Paths JSONL")->required();
  stats->add_option("-g,--graph", stats_graphs, "Graph JSON file(s)")
      ->required();
  stats->add_option("-o,--out", stats_out, "Output stats JSON")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate executed trajectories");
  std::vector<std::string> eval_graphs;
  std::string eval_paths, eval_exec, eval_out;
  double d_th = 3.0;
  bool ne_euclidean = false;
  eval->add_option("-g,--graph", eval_graphs, "Graph JSON file(s)")
      ->required();
  eval->add_option("-p,--paths", eval_paths, "Reference paths JSONL")
      ->required();
  eval->add_option("-e,--executed", eval_exec, "Executed JSONL")->required();
  eval->add_option("--d-th", d_th, "Success threshold in meters")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--ne-euclidean", ne_euclidean,
                 "Navigation error as Euclidean instead of geodesic");
  eval->add_option("-o,--out", eval_out, "Output report JSON")->required();

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Run a simple baseline");
  std::string policy;
  std::vector<std::string> base_graphs;
  std::string base_paths, base_out;
  std::size_t steps = 8;
  std::uint64_t base_seed = 0;
  baseline->add_option("--policy", policy, "Policy")
      ->required()
      ->check(CLI::IsMember({"random-walk", "random-straight",
                             "oracle-straight"}));
  baseline->add_option("-g,--graph", base_graphs, "Graph JSON file(s)")
      ->required();
  baseline->add_option("-p,--paths", base_paths, "Reference paths JSONL")
      ->required();
  baseline->add_option("--steps", steps, "Step budget N");
  baseline->add_option("--seed", base_seed, "Random seed");
  baseline->add_option("-o,--out", base_out, "Output executed JSONL")
      ->required();

  // align
  auto* align = app.add_subcommand("align",
                                   "Align a manual transcript to ASR tokens");
  std::string manual_file, asr_file, align_out;
  std::string instruction_id = "instruction-0";
  std::string language = "en";
  align->add_option("--manual", manual_file, "Manual transcript text file")
      ->required();
  align->add_option("--asr", asr_file, "ASR tokens JSONL")->required();
  align->add_option("--instruction-id", instruction_id, "Instruction id");
  align->add_option("--language", language, "BCP-47 language tag");
  align->add_option("-o,--out", align_out, "Output instruction JSON")
      ->required();

  // masks
  auto* masks = app.add_subcommand("masks",
                                   "Per-step text and pooled visual masks");
  std::string trace_file, instr_file, masks_out;
  std::size_t rows = 96, cols = 192;
  masks->set_help_flag("--help", "Print help");  // frees -h/--h for rows
  masks->add_option("--trace", trace_file, "Pose trace JSONL")->required();
  masks->add_option("--instr", instr_file, "Timed instruction JSON")
      ->required();
  masks->add_option("--h", rows, "Raster rows")->check(CLI::PositiveNumber);
  masks->add_option("--w", cols, "Raster cols")->check(CLI::PositiveNumber);
  masks->add_option("-o,--out", masks_out, "Output masks JSONL")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(spec, synth_out);
    if (sample->parsed()) return cmd_sample(sample_graphs, cfg, sample_out);
    if (stats->parsed()) return cmd_stats(stats_paths, stats_graphs, stats_out);
    if (eval->parsed()) {
      return cmd_eval(eval_graphs, eval_paths, eval_exec, d_th, ne_euclidean,
                      eval_out);
    }
    if (baseline->parsed()) {
      return cmd_baseline(policy, base_graphs, base_paths, steps, base_seed,
                          base_out);
    }
    if (align->parsed()) {
      return cmd_align(manual_file, asr_file, instruction_id, language,
                       align_out);
    }
    if (masks->parsed()) {
      return cmd_masks(trace_file, instr_file, rows, cols, masks_out);
    }
  } catch (const pathkit::Error& e) {
    std::cerr << "[pathkit] error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "[pathkit] internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "[pathkit] error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
