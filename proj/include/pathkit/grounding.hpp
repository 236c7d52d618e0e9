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

#ifndef PATHKIT_GROUNDING_HPP_
#define PATHKIT_GROUNDING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathkit/alignment.hpp"

namespace pathkit {

/// One timestamped virtual camera pose. Heading is yaw measured from +y,
/// clockwise positive; elevation is pitch, up positive; roll is zero.
struct PoseSample {
  double time_s = 0.0;
  std::string pano_id;
  double heading_rad = 0.0;
  double elevation_rad = 0.0;
  double vfov_rad = 0.0;
};

/// A pose trace over a path: samples in strictly increasing time, each
/// located at a path viewpoint, visiting path positions in order (positions
/// may be skipped, never revisited out of order).
struct PoseTrace {
  std::vector<PoseSample> samples;
  std::vector<std::string> path;
};

/// Validates the trace and maps each sample to the path position it was
/// taken at. Throws Error on out-of-order or off-path samples.
std::vector<std::size_t> assign_positions(const PoseTrace& trace);

struct StepWindow {
  std::size_t step = 0;
  double begin_s = 0.0;
  double end_s = 0.0;  // begin == end for skipped positions
};

/// One half-open time window per path position; the last is closed at the
/// final sample time. Step t ends when the trace first reaches a position
/// beyond t; together the windows partition [first, last].
std::vector<StepWindow> step_windows(const PoseTrace& trace);

struct TextMask {
  std::vector<std::uint8_t> bits;
};

/// bits[i] = 1 iff token i was fully spoken (end_s) by the end of step t's
/// window. Cumulative in t.
TextMask text_mask(const TimedInstruction& instr, const PoseTrace& trace,
                   std::size_t t);

/// Equirectangular observation raster: rows span elevation [-pi/2, pi/2]
/// bottom-up, columns span yaw [0, 2pi), both sampled at cell centers.
struct VisualMask {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bits;  // row-major

  bool at(std::size_t row, std::size_t col) const {
    return bits[row * cols + col] != 0;
  }
};

inline constexpr double kCanvasAspect = 640.0 / 480.0;

/// Pixels of the panorama at path position t observed by any pose sample at
/// that viewpoint up to the end of step t's window. A cell is observed when
/// its direction falls inside the pose's pinhole frustum (vertical fov as
/// given, horizontal fov widened by the canvas aspect).
VisualMask visual_mask(const PoseTrace& trace, std::size_t t,
                       std::size_t rows = 96, std::size_t cols = 192,
                       double aspect = kCanvasAspect);

/// 36-bin panorama mask: 12 yaw bins of 30 degrees by 3 elevation bands
/// centered at -30/0/+30 degrees. Ordering is elevation-major (low band
/// first), yaw-minor.
struct PooledMask {
  std::array<std::uint8_t, 36> bits{};
};

/// Max-pools a raster mask into the 36 bins; cells outside the +-45 degree
/// elevation span clamp to the nearest band.
PooledMask pool_mask(const VisualMask& mask);

/// Attention supervision loss:
///   log sum_i exp(z_i) - log sum_i m_i exp(z_i),
/// evaluated with max-subtraction. Zero exactly when the mask is all ones;
/// errors on an all-zero mask (the masked sum would be log 0).
double grounding_loss(std::span<const double> z,
                      std::span<const std::uint8_t> m);

/// Analytic gradient: softmax(z)_i - m_i exp(z_i) / sum_j m_j exp(z_j).
std::vector<double> grounding_loss_grad(std::span<const double> z,
                                        std::span<const std::uint8_t> m);

}  // namespace pathkit

#endif  // PATHKIT_GROUNDING_HPP_
