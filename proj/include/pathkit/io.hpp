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

#ifndef PATHKIT_IO_HPP_
#define PATHKIT_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "pathkit/alignment.hpp"
#include "pathkit/grounding.hpp"
#include "pathkit/metrics.hpp"
#include "pathkit/sampler.hpp"

namespace pathkit {

// One guide path per line:
// {"path_id": str, "building_id": str, "nodes": [str], "room_path": [str],
//  "length_m": f, "geodesic_m": f}
std::string guide_path_to_jsonl(const GuidePath& path);
GuidePath guide_path_from_jsonl(const std::string& line);
void write_guide_paths(std::ostream& out, const std::vector<GuidePath>& paths);
std::vector<GuidePath> read_guide_paths(std::istream& in);
std::vector<GuidePath> read_guide_paths_file(const std::string& path);

// Executed trajectories, one per line: {"path_id": str, "nodes": [str]}
struct ExecutedPath {
  std::string path_id;
  std::vector<std::string> nodes;
};
std::string executed_to_jsonl(const ExecutedPath& ep);
ExecutedPath executed_from_jsonl(const std::string& line);
void write_executed(std::ostream& out, const std::vector<ExecutedPath>& eps);
std::vector<ExecutedPath> read_executed(std::istream& in);
std::vector<ExecutedPath> read_executed_file(const std::string& path);

// Pose trace: a header line {"path": [str]} followed by sample rows
// {"time_s": f, "pano_id": str, "heading_rad": f, "elevation_rad": f,
//  "vfov_rad": f}
void write_pose_trace(std::ostream& out, const PoseTrace& trace);
PoseTrace read_pose_trace(std::istream& in);
PoseTrace read_pose_trace_file(const std::string& path);

// Timed instruction as a single JSON object (written as one JSONL row):
// {"instruction_id": str, "language": str,
//  "tokens": [{"text": str, "start_s": f, "end_s": f}]}
std::string timed_instruction_to_json(const TimedInstruction& instr);
TimedInstruction timed_instruction_from_json(const std::string& text);
TimedInstruction read_timed_instruction_file(const std::string& path);

// ASR rows: {"text": str, "start_s": f, "end_s": f}
std::vector<TimedToken> read_asr_jsonl(std::istream& in);
std::vector<TimedToken> read_asr_jsonl_file(const std::string& path);

/// Stats report with stable key order; histograms go to sibling CSVs.
std::string stats_report_to_json(const StatsReport& report);
std::string histogram_to_csv(const Histogram& hist,
                             const std::string& bin_header,
                             const std::string& count_header);

/// Eval report: per-episode metrics plus the aggregate (with the x100
/// convenience fields).
struct EpisodeResult {
  std::string path_id;
  MetricsReport metrics;
};
std::string eval_report_to_json(const std::vector<EpisodeResult>& episodes,
                                const AggregateReport& agg, double d_th);

/// Writes content to a temp file in the destination directory, then
/// renames, so readers never observe partial output.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace pathkit

#endif  // PATHKIT_IO_HPP_
