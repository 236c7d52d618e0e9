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

#ifndef PATHKIT_METRICS_HPP_
#define PATHKIT_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathkit/navgraph.hpp"
#include "pathkit/sampler.hpp"

namespace pathkit {

/// Unnormalized DTW cost between two point sequences: the minimum over
/// monotone warping paths from (0,0) to (|R|-1,|Q|-1) of the summed
/// Euclidean distances at matched cells. Full lattice, no band.
double dtw_cost(std::span<const Vec3> ref, std::span<const Vec3> query);

/// exp(-dtw / (|reference| * d_th)); 1.0 iff the warp cost is zero.
double ndtw(const PanoGraph& g, const GuidePath& reference,
            std::span<const std::string> executed, double d_th = 3.0);

/// One agent run against a reference path.
struct Episode {
  GuidePath reference;
  std::vector<std::string> executed;
};

/// Throws Error unless: executed non-empty, starts at the reference start,
/// and each consecutive executed pair is a graph edge.
void validate_episode(const PanoGraph& g, const Episode& ep);

struct MetricsReport {
  double pl_m = 0.0;   // executed path length
  double ne_m = 0.0;   // navigation error at stop
  int sr = 0;          // success: ne <= d_th (inclusive)
  double spl = 0.0;    // sr * geodesic / max(pl, geodesic)
  double ndtw = 0.0;
  double sdtw = 0.0;   // sr * ndtw
};

struct EvalOptions {
  double d_th = 3.0;
  // NE is geodesic by default (R2R convention); Euclidean is available for
  // comparison.
  bool ne_euclidean = false;
};

MetricsReport evaluate_episode(const PanoGraph& g, const Episode& ep,
                               const EvalOptions& opts = {});

struct RewardOptions {
  double d_th = 3.0;
  double w0 = 1.0;
  std::optional<double> w1;  // defaults to -1/d_th
};

/// Dense shaping reward at one step: the NDTW gained between the previous
/// and current executed prefixes, plus the terminal w0 + w1*NE term when
/// the agent stopped. Summed over an episode the dense part telescopes to
/// ndtw(final) - ndtw(initial).
double step_reward(const PanoGraph& g, const GuidePath& reference,
                   std::span<const std::string> executed_prefix_t,
                   std::span<const std::string> executed_prefix_t_minus_1,
                   bool stopped, const RewardOptions& opts = {});

struct FollowerAttempt {
  bool success = false;
  double sdtw = 0.0;
};

enum class Verdict { Accept, RetryFollower, ReEnqueuePath, SelectBest };

struct QADecision {
  Verdict verdict;
  std::optional<std::size_t> selected_attempt;
};

/// Follower-validation decision for the attempts recorded so far:
///   [ok, ...]        -> Accept(0)
///   [fail]           -> RetryFollower
///   [fail, ok]       -> Accept(1), the failed attempt is discarded
///   [fail, fail]     -> ReEnqueuePath
///   three attempts   -> SelectBest(highest sdtw, ties by lower index)
QADecision validate_annotation(std::span<const FollowerAttempt> attempts);

struct AggregateReport {
  std::size_t count = 0;
  double pl_m = 0.0;
  double ne_m = 0.0;
  double sr = 0.0;
  double spl = 0.0;
  double ndtw = 0.0;
  double sdtw = 0.0;
};

/// Arithmetic means. Serialization additionally reports SR/SPL/NDTW/SDTW
/// scaled by 100 for table-style summaries.
AggregateReport aggregate(std::span<const MetricsReport> reports);

}  // namespace pathkit

#endif  // PATHKIT_METRICS_HPP_
