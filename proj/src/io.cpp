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

#include "pathkit/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathkit/error.hpp"

#include "json.hpp"

namespace pathkit {

namespace {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

json parse_line(const std::string& line, const char* what) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(std::string(what) + ": bad JSON line: " + e.what());
  }
}

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) {
      throw Error(std::string(what) + " must contain strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(std::string(what) + ": missing numeric field " + key);
  }
  return j[key].get<double>();
}

std::string string_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(std::string(what) + ": missing string field " + key);
  }
  return j[key].get<std::string>();
}

}  // namespace

std::string guide_path_to_jsonl(const GuidePath& path) {
  ojson j;
  j["path_id"] = path.path_id;
  j["building_id"] = path.building_id;
  j["nodes"] = path.nodes;
  j["room_path"] = path.room_path;
  j["length_m"] = path.length_m;
  j["geodesic_m"] = path.geodesic_m;
  return j.dump();
}

GuidePath guide_path_from_jsonl(const std::string& line) {
  json j = parse_line(line, "guide path");
  GuidePath p;
  p.path_id = string_field(j, "path_id", "guide path");
  p.building_id = string_field(j, "building_id", "guide path");
  if (!j.contains("nodes")) throw Error("guide path: missing nodes");
  p.nodes = string_array(j["nodes"], "guide path nodes");
  if (!j.contains("room_path")) throw Error("guide path: missing room_path");
  p.room_path = string_array(j["room_path"], "guide path room_path");
  p.length_m = number_field(j, "length_m", "guide path");
  p.geodesic_m = number_field(j, "geodesic_m", "guide path");
  return p;
}

void write_guide_paths(std::ostream& out,
                       const std::vector<GuidePath>& paths) {
  for (const GuidePath& p : paths) out << guide_path_to_jsonl(p) << "\n";
}

std::vector<GuidePath> read_guide_paths(std::istream& in) {
  std::vector<GuidePath> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(guide_path_from_jsonl(line));
  }
  return out;
}

std::vector<GuidePath> read_guide_paths_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open paths file: " + path);
  return read_guide_paths(in);
}

std::string executed_to_jsonl(const ExecutedPath& ep) {
  ojson j;
  j["path_id"] = ep.path_id;
  j["nodes"] = ep.nodes;
  return j.dump();
}

ExecutedPath executed_from_jsonl(const std::string& line) {
  json j = parse_line(line, "executed path");
  ExecutedPath ep;
  ep.path_id = string_field(j, "path_id", "executed path");
  if (!j.contains("nodes")) throw Error("executed path: missing nodes");
  ep.nodes = string_array(j["nodes"], "executed path nodes");
  return ep;
}

void write_executed(std::ostream& out, const std::vector<ExecutedPath>& eps) {
  for (const ExecutedPath& ep : eps) out << executed_to_jsonl(ep) << "\n";
}

std::vector<ExecutedPath> read_executed(std::istream& in) {
  std::vector<ExecutedPath> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(executed_from_jsonl(line));
  }
  return out;
}

std::vector<ExecutedPath> read_executed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open executed file: " + path);
  return read_executed(in);
}

void write_pose_trace(std::ostream& out, const PoseTrace& trace) {
  ojson header;
  header["path"] = trace.path;
  out << header.dump() << "\n";
  for (const PoseSample& s : trace.samples) {
    ojson j;
    j["time_s"] = s.time_s;
    j["pano_id"] = s.pano_id;
    j["heading_rad"] = s.heading_rad;
    j["elevation_rad"] = s.elevation_rad;
    j["vfov_rad"] = s.vfov_rad;
    out << j.dump() << "\n";
  }
}

PoseTrace read_pose_trace(std::istream& in) {
  PoseTrace trace;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = parse_line(line, "pose trace");
    if (!have_header) {
      if (!j.contains("path")) {
        throw Error("pose trace: first line must carry the path");
      }
      trace.path = string_array(j["path"], "pose trace path");
      have_header = true;
      continue;
    }
    PoseSample s;
    s.time_s = number_field(j, "time_s", "pose sample");
    s.pano_id = string_field(j, "pano_id", "pose sample");
    s.heading_rad = number_field(j, "heading_rad", "pose sample");
    s.elevation_rad = number_field(j, "elevation_rad", "pose sample");
    s.vfov_rad = number_field(j, "vfov_rad", "pose sample");
    trace.samples.push_back(std::move(s));
  }
  if (!have_header) throw Error("pose trace: empty file");
  return trace;
}

PoseTrace read_pose_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file: " + path);
  return read_pose_trace(in);
}

std::string timed_instruction_to_json(const TimedInstruction& instr) {
  ojson j;
  j["instruction_id"] = instr.instruction_id;
  j["language"] = instr.language;
  j["tokens"] = ojson::array();
  for (const TimedToken& t : instr.tokens) {
    ojson jt;
    jt["text"] = t.text;
    jt["start_s"] = t.start_s;
    jt["end_s"] = t.end_s;
    j["tokens"].push_back(std::move(jt));
  }
  return j.dump();
}

TimedInstruction timed_instruction_from_json(const std::string& text) {
  json j = parse_line(text, "instruction");
  TimedInstruction instr;
  instr.instruction_id = string_field(j, "instruction_id", "instruction");
  instr.language = string_field(j, "language", "instruction");
  if (!j.contains("tokens") || !j["tokens"].is_array()) {
    throw Error("instruction: missing tokens array");
  }
  for (const json& jt : j["tokens"]) {
    TimedToken t;
    t.text = string_field(jt, "text", "instruction token");
    t.start_s = number_field(jt, "start_s", "instruction token");
    t.end_s = number_field(jt, "end_s", "instruction token");
    instr.tokens.push_back(std::move(t));
  }
  return instr;
}

TimedInstruction read_timed_instruction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instruction file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return timed_instruction_from_json(buf.str());
}

std::vector<TimedToken> read_asr_jsonl(std::istream& in) {
  std::vector<TimedToken> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = parse_line(line, "asr token");
    TimedToken t;
    t.text = string_field(j, "text", "asr token");
    t.start_s = number_field(j, "start_s", "asr token");
    t.end_s = number_field(j, "end_s", "asr token");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TimedToken> read_asr_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open asr file: " + path);
  return read_asr_jsonl(in);
}

std::string stats_report_to_json(const StatsReport& report) {
  ojson j;
  j["count"] = report.count;
  j["length_m"] = {{"mean", report.mean_length_m},
                   {"stddev", report.stddev_length_m}};
  j["length_edges"] = {{"mean", report.mean_edges},
                       {"stddev", report.stddev_edges}};
  j["visit_counts"] = {{"stddev", report.visit_stddev}};
  j["non_shortest_fraction"] = report.non_shortest_fraction;
  j["mean_detour_pct"] = report.mean_detour_pct;
  return j.dump(2) + "\n";
}

std::string histogram_to_csv(const Histogram& hist,
                             const std::string& bin_header,
                             const std::string& count_header) {
  std::ostringstream out;
  out << bin_header << "," << count_header << "\n";
  for (const auto& [bin, count] : hist.bins) {
    out << bin << "," << count << "\n";
  }
  return out.str();
}

std::string eval_report_to_json(const std::vector<EpisodeResult>& episodes,
                                const AggregateReport& agg, double d_th) {
  ojson j;
  j["d_th_m"] = d_th;
  j["episodes"] = ojson::array();
  for (const EpisodeResult& e : episodes) {
    ojson je;
    je["path_id"] = e.path_id;
    je["pl_m"] = e.metrics.pl_m;
    je["ne_m"] = e.metrics.ne_m;
    je["sr"] = e.metrics.sr;
    je["spl"] = e.metrics.spl;
    je["ndtw"] = e.metrics.ndtw;
    je["sdtw"] = e.metrics.sdtw;
    j["episodes"].push_back(std::move(je));
  }
  ojson ja;
  ja["count"] = agg.count;
  ja["pl_m"] = agg.pl_m;
  ja["ne_m"] = agg.ne_m;
  ja["sr"] = agg.sr;
  ja["spl"] = agg.spl;
  ja["ndtw"] = agg.ndtw;
  ja["sdtw"] = agg.sdtw;
  ja["sr_pct"] = 100.0 * agg.sr;
  ja["spl_pct"] = 100.0 * agg.spl;
  ja["ndtw_pct"] = 100.0 * agg.ndtw;
  ja["sdtw_pct"] = 100.0 * agg.sdtw;
  j["aggregate"] = std::move(ja);
  return j.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  fs::path tmp = target;
  tmp += ".tmp";
  if (!dir.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write: " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("rename failed for " + path + ": " + ec.message());
}

}  // namespace pathkit
