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

#ifndef PATHKIT_BASELINES_HPP_
#define PATHKIT_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathkit/navgraph.hpp"
#include "pathkit/rng.hpp"
#include "pathkit/sampler.hpp"

namespace pathkit {

enum class Policy { RandomWalk, RandomHeadingStraight, OracleFirstStepStraight };

struct PolicyRun {
  Policy policy = Policy::RandomWalk;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> executed;
};

/// "Go straight" primitive: the neighbor whose bearing deviates least from
/// the current heading, or Stop (nullopt) when even the best neighbor is
/// more than 90 degrees off. Ties go to the smallest node id. Purely
/// vertical moves (stairs) count as zero deviation.
std::optional<std::string> go_straight_step(const PanoGraph& g,
                                            const std::string& current,
                                            double heading_rad);

/// n_steps uniform-random neighbor moves; no mid-walk stopping. An isolated
/// start yields just [start].
std::vector<std::string> run_random_walk(const PanoGraph& g,
                                         const std::string& start,
                                         std::size_t n_steps, SplitMix64& rng);

/// Draws a heading uniform in [0, 2pi), then repeatedly goes straight,
/// re-aiming along each move taken; halts at Stop or after n_steps moves.
std::vector<std::string> run_random_heading_straight(const PanoGraph& g,
                                                     const std::string& start,
                                                     std::size_t n_steps,
                                                     SplitMix64& rng);

/// Takes the reference's true first step, then goes straight. Deterministic.
std::vector<std::string> run_oracle_first_step_straight(
    const PanoGraph& g, const GuidePath& reference, std::size_t n_steps);

/// Runs one policy episode against a reference path. Random policies draw
/// from a stream derived from (seed, reference.path_id), so results do not
/// depend on episode order.
PolicyRun run_policy(const PanoGraph& g, Policy policy,
                     const GuidePath& reference, std::size_t n_steps,
                     std::uint64_t seed);

}  // namespace pathkit

#endif  // PATHKIT_BASELINES_HPP_
