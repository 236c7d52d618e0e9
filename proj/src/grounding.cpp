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

#include "pathkit/grounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathkit/error.hpp"
#include "pathkit/geometry.hpp"

namespace pathkit {

std::vector<std::size_t> assign_positions(const PoseTrace& trace) {
  if (trace.path.empty()) throw Error("pose trace: empty path");
  if (trace.samples.empty()) throw Error("pose trace: no samples");
  std::vector<std::size_t> positions;
  positions.reserve(trace.samples.size());
  std::size_t pos = 0;
  double prev_time = -std::numeric_limits<double>::infinity();
  for (const PoseSample& s : trace.samples) {
    if (!(s.time_s > prev_time)) {
      throw Error("pose trace: sample times must be strictly increasing");
    }
    prev_time = s.time_s;
    if (!(s.vfov_rad > 0.0 && s.vfov_rad < M_PI)) {
      throw Error("pose trace: vfov out of (0, pi)");
    }
    if (std::fabs(s.elevation_rad) > M_PI / 2.0 + 1e-12) {
      throw Error("pose trace: elevation out of [-pi/2, pi/2]");
    }
    // Stay at the current position if the pano matches, otherwise advance.
    // Moving backwards (a pano only found earlier) is an ordering violation.
    std::size_t next = pos;
    while (next < trace.path.size() && trace.path[next] != s.pano_id) ++next;
    if (next == trace.path.size()) {
      throw Error("pose trace: sample at '" + s.pano_id +
                  "' breaks path order");
    }
    pos = next;
    positions.push_back(pos);
  }
  return positions;
}

std::vector<StepWindow> step_windows(const PoseTrace& trace) {
  std::vector<std::size_t> positions = assign_positions(trace);
  const std::size_t steps = trace.path.size();
  const double t_first = trace.samples.front().time_s;
  const double t_last = trace.samples.back().time_s;

  // First visit time per position, where visited.
  std::vector<double> first_visit(steps,
                                  std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (std::isnan(first_visit[positions[i]])) {
      first_visit[positions[i]] = trace.samples[i].time_s;
    }
  }

  // Step t ends when any later position is first reached; skipped positions
  // collapse to empty windows at that same boundary.
  std::vector<StepWindow> windows(steps);
  double end = t_last;
  for (std::size_t t = steps; t-- > 0;) {
    windows[t].step = t;
    windows[t].end_s = end;
    if (!std::isnan(first_visit[t])) end = first_visit[t];
  }
  windows[0].begin_s = t_first;
  for (std::size_t t = 1; t < steps; ++t) {
    windows[t].begin_s = windows[t - 1].end_s;
  }
  return windows;
}

TextMask text_mask(const TimedInstruction& instr, const PoseTrace& trace,
                   std::size_t t) {
  std::vector<StepWindow> windows = step_windows(trace);
  if (t >= windows.size()) throw Error("text_mask: step index out of range");
  TextMask mask;
  mask.bits.reserve(instr.tokens.size());
  for (const TimedToken& tok : instr.tokens) {
    mask.bits.push_back(tok.end_s <= windows[t].end_s ? 1 : 0);
  }
  return mask;
}

namespace {

struct CameraFrame {
  Vec3 forward, right, up;
  double tan_half_v = 0.0;
  double tan_half_h = 0.0;
};

CameraFrame camera_frame(const PoseSample& s, double aspect) {
  double ch = std::cos(s.heading_rad), sh = std::sin(s.heading_rad);
  double ce = std::cos(s.elevation_rad), se = std::sin(s.elevation_rad);
  CameraFrame f;
  f.forward = {sh * ce, ch * ce, se};
  f.right = {ch, -sh, 0.0};  // zero roll
  f.up = {-sh * se, -ch * se, ce};
  f.tan_half_v = std::tan(s.vfov_rad / 2.0);
  f.tan_half_h = aspect * f.tan_half_v;
  return f;
}

bool in_frustum(const CameraFrame& f, const Vec3& dir) {
  double fwd = dot(dir, f.forward);
  if (fwd <= 0.0) return false;
  return std::fabs(dot(dir, f.right)) <= f.tan_half_h * fwd &&
         std::fabs(dot(dir, f.up)) <= f.tan_half_v * fwd;
}

}  // namespace

VisualMask visual_mask(const PoseTrace& trace, std::size_t t,
                       std::size_t rows, std::size_t cols, double aspect) {
  std::vector<StepWindow> windows = step_windows(trace);
  if (t >= windows.size()) throw Error("visual_mask: step out of range");
  if (rows < 1 || cols < 1) throw Error("visual_mask: empty raster");

  VisualMask mask;
  mask.rows = rows;
  mask.cols = cols;
  mask.bits.assign(rows * cols, 0);

  std::vector<CameraFrame> frames;
  for (const PoseSample& s : trace.samples) {
    if (s.pano_id == trace.path[t] && s.time_s <= windows[t].end_s) {
      frames.push_back(camera_frame(s, aspect));
    }
  }
  if (frames.empty()) return mask;

  for (std::size_t r = 0; r < rows; ++r) {
    double elev =
        -M_PI / 2.0 + (static_cast<double>(r) + 0.5) * M_PI / rows;
    double ce = std::cos(elev), se = std::sin(elev);
    for (std::size_t c = 0; c < cols; ++c) {
      double yaw = (static_cast<double>(c) + 0.5) * 2.0 * M_PI / cols;
      Vec3 dir{std::sin(yaw) * ce, std::cos(yaw) * ce, se};
      for (const CameraFrame& f : frames) {
        if (in_frustum(f, dir)) {
          mask.bits[r * cols + c] = 1;
          break;
        }
      }
    }
  }
  return mask;
}

PooledMask pool_mask(const VisualMask& mask) {
  PooledMask pooled;
  const double deg = M_PI / 180.0;
  for (std::size_t r = 0; r < mask.rows; ++r) {
    double elev =
        -M_PI / 2.0 + (static_cast<double>(r) + 0.5) * M_PI / mask.rows;
    // Bands are 30 degrees tall over [-45, 45); out-of-span cells clamp.
    int band;
    if (elev < -45.0 * deg) {
      band = 0;
    } else if (elev >= 45.0 * deg) {
      band = 2;
    } else {
      band = static_cast<int>(std::floor((elev + 45.0 * deg) / (30.0 * deg)));
      band = std::clamp(band, 0, 2);
    }
    for (std::size_t c = 0; c < mask.cols; ++c) {
      if (!mask.at(r, c)) continue;
      double yaw = (static_cast<double>(c) + 0.5) * 2.0 * M_PI / mask.cols;
      int ybin = static_cast<int>(std::floor(yaw / (30.0 * deg))) % 12;
      pooled.bits[static_cast<std::size_t>(band) * 12 +
                  static_cast<std::size_t>(ybin)] = 1;
    }
  }
  return pooled;
}

namespace {

// log(sum exp(z_i)) over indices where pick(i), max-subtracted. Requires at
// least one picked index.
template <typename Pick>
double log_sum_exp(std::span<const double> z, Pick pick) {
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (pick(i)) zmax = std::max(zmax, z[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (pick(i)) sum += std::exp(z[i] - zmax);
  }
  return zmax + std::log(sum);
}

void check_loss_args(std::span<const double> z,
                     std::span<const std::uint8_t> m) {
  if (z.size() != m.size()) {
    throw Error("grounding_loss: logits/mask length mismatch");
  }
  if (z.empty()) throw Error("grounding_loss: empty input");
  bool any = false;
  for (std::uint8_t b : m) any = any || b != 0;
  if (!any) throw Error("grounding_loss: all-zero mask");
}

}  // namespace

double grounding_loss(std::span<const double> z,
                      std::span<const std::uint8_t> m) {
  check_loss_args(z, m);
  double full = log_sum_exp(z, [](std::size_t) { return true; });
  double masked = log_sum_exp(z, [&](std::size_t i) { return m[i] != 0; });
  return full - masked;
}

std::vector<double> grounding_loss_grad(std::span<const double> z,
                                        std::span<const std::uint8_t> m) {
  check_loss_args(z, m);
  double zmax = *std::max_element(z.begin(), z.end());
  double full_sum = 0.0, masked_sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double e = std::exp(z[i] - zmax);
    full_sum += e;
    if (m[i] != 0) masked_sum += e;
  }
  std::vector<double> grad(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double e = std::exp(z[i] - zmax);
    grad[i] = e / full_sum - (m[i] != 0 ? e / masked_sum : 0.0);
  }
  return grad;
}

}  // namespace pathkit
