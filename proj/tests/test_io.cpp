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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathkit/error.hpp"
#include "pathkit/io.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace pathkit;
namespace pt = pathkit::testing;

TEST_SUITE("io") {

TEST_CASE("guide paths: JSONL round-trip is lossless") {
  SynthSpec spec;
  spec.rooms_per_level = 4;
  spec.panos_per_room = 3;
  spec.levels = 2;
  spec.seed = 5;
  PanoGraph g = generate_synthetic_house(spec);
  SamplerConfig cfg;
  cfg.seed = 5;
  cfg.target = 8;
  PathDataset ds = sample_dataset({g}, cfg);
  REQUIRE(!ds.paths.empty());

  std::ostringstream out;
  write_guide_paths(out, ds.paths);
  std::istringstream in(out.str());
  std::vector<GuidePath> reloaded = read_guide_paths(in);
  REQUIRE(reloaded.size() == ds.paths.size());
  for (std::size_t i = 0; i < reloaded.size(); ++i) {
    CHECK(reloaded[i] == ds.paths[i]);
  }
}

TEST_CASE("guide paths: serialization is deterministic") {
  GuidePath p;
  p.path_id = "b_000001";
  p.building_id = "b";
  p.nodes = {"x", "y"};
  p.room_path = {"r#0"};
  p.length_m = 2.5;
  p.geodesic_m = 2.5;
  CHECK(guide_path_to_jsonl(p) == guide_path_to_jsonl(p));
  CHECK(guide_path_to_jsonl(p).find("\"path_id\":\"b_000001\"") !=
        std::string::npos);
}

TEST_CASE("executed paths: round-trip and malformed rows") {
  ExecutedPath ep{"path-1", {"a", "b", "c"}};
  ExecutedPath back = executed_from_jsonl(executed_to_jsonl(ep));
  CHECK(back.path_id == ep.path_id);
  CHECK(back.nodes == ep.nodes);

  CHECK_THROWS_AS(executed_from_jsonl("{\"nodes\": []}"), Error);
  CHECK_THROWS_AS(executed_from_jsonl("not json"), Error);
}

TEST_CASE("pose trace: round-trip with header row") {
  PoseTrace trace;
  trace.path = {"p0", "p1"};
  trace.samples = {{0.0, "p0", 0.1, 0.0, 1.3}, {1.5, "p1", 2.0, -0.2, 1.3}};
  std::ostringstream out;
  write_pose_trace(out, trace);
  std::istringstream in(out.str());
  PoseTrace back = read_pose_trace(in);
  CHECK(back.path == trace.path);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[1].heading_rad == 2.0);
  CHECK(back.samples[1].time_s == 1.5);

  std::istringstream missing_header("{\"time_s\": 0.0}");
  CHECK_THROWS_AS(read_pose_trace(missing_header), Error);
}

TEST_CASE("instruction: round-trip") {
  TimedInstruction instr;
  instr.instruction_id = "i1";
  instr.language = "hi";
  instr.tokens = {{"chalo", 0.0, 0.5}, {"aage", 0.6, 1.0}};
  TimedInstruction back =
      timed_instruction_from_json(timed_instruction_to_json(instr));
  CHECK(back.instruction_id == "i1");
  CHECK(back.language == "hi");
  REQUIRE(back.tokens.size() == 2);
  CHECK(back.tokens[1].text == "aage");
  CHECK(back.tokens[1].end_s == 1.0);
}

TEST_CASE("stats report: identical inputs produce identical bytes") {
  StatsReport r;
  r.count = 3;
  r.mean_length_m = 12.5;
  r.stddev_length_m = 2.0;
  r.mean_edges = 6.0;
  r.stddev_edges = 1.0;
  r.visit_stddev = 0.7;
  r.non_shortest_fraction = 0.5;
  r.mean_detour_pct = 21.0;
  r.length_m_hist.bins = {{12, 2}, {13, 1}};
  CHECK(stats_report_to_json(r) == stats_report_to_json(r));
}

TEST_CASE("histogram csv: header-only when empty, sorted rows otherwise") {
  Histogram empty;
  CHECK(histogram_to_csv(empty, "meters", "paths") == "meters,paths\n");

  Histogram h;
  h.bins = {{5, 1}, {3, 1}};
  CHECK(histogram_to_csv(h, "edges", "paths") == "edges,paths\n3,1\n5,1\n");
}

TEST_CASE("atomic write: content lands and overwrites") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pathkit_io_test";
  fs::create_directories(dir);
  std::string target = (dir / "out.txt").string();
  atomic_write_file(target, "first\n");
  atomic_write_file(target, "second\n");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "second\n");
  fs::remove_all(dir);
}

}  // TEST_SUITE
