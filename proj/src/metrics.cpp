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

#include "pathkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathkit/error.hpp"

namespace pathkit {

double dtw_cost(std::span<const Vec3> ref, std::span<const Vec3> query) {
  if (ref.empty() || query.empty()) {
    throw Error("dtw_cost: empty sequence");
  }
  const std::size_t n = ref.size();
  const std::size_t m = query.size();
  // Rolling single row: cur[j] = cost(i, j).
  std::vector<double> prev(m), cur(m);
  prev[0] = distance(ref[0], query[0]);
  for (std::size_t j = 1; j < m; ++j) {
    prev[j] = prev[j - 1] + distance(ref[0], query[j]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    cur[0] = prev[0] + distance(ref[i], query[0]);
    for (std::size_t j = 1; j < m; ++j) {
      cur[j] = distance(ref[i], query[j]) +
               std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

namespace {

std::vector<Vec3> positions_of(const PanoGraph& g,
                               std::span<const std::string> nodes) {
  std::vector<Vec3> pts;
  pts.reserve(nodes.size());
  for (const std::string& id : nodes) pts.push_back(g.node(id).position);
  return pts;
}

}  // namespace

double ndtw(const PanoGraph& g, const GuidePath& reference,
            std::span<const std::string> executed, double d_th) {
  if (reference.nodes.empty()) throw Error("ndtw: empty reference");
  if (!(d_th > 0.0)) throw Error("ndtw: d_th must be > 0");
  double cost = dtw_cost(positions_of(g, reference.nodes),
                         positions_of(g, executed));
  return std::exp(-cost /
                  (static_cast<double>(reference.nodes.size()) * d_th));
}

void validate_episode(const PanoGraph& g, const Episode& ep) {
  if (ep.executed.empty()) throw Error("episode: empty executed sequence");
  if (ep.reference.nodes.empty()) throw Error("episode: empty reference");
  if (ep.executed.front() != ep.reference.nodes.front()) {
    throw Error("episode: executed path must start at the reference start");
  }
  std::size_t prev = g.index_of(ep.executed[0]);
  for (std::size_t i = 1; i < ep.executed.size(); ++i) {
    std::size_t cur = g.index_of(ep.executed[i]);
    if (!g.adjacent(prev, cur)) {
      throw Error("episode: " + ep.executed[i - 1] + " -> " + ep.executed[i] +
                  " is not a graph edge");
    }
    prev = cur;
  }
}

MetricsReport evaluate_episode(const PanoGraph& g, const Episode& ep,
                               const EvalOptions& opts) {
  validate_episode(g, ep);
  if (!(ep.reference.geodesic_m > 0.0)) {
    throw Error("episode: degenerate reference (geodesic 0)");
  }
  MetricsReport r;
  r.pl_m = path_length(g, ep.executed);

  const std::string& stop = ep.executed.back();
  const std::string& goal = ep.reference.nodes.back();
  if (opts.ne_euclidean) {
    r.ne_m = distance(g.node(stop).position, g.node(goal).position);
  } else {
    auto geo = geodesic_distance(g, stop, goal);
    r.ne_m = geo ? *geo : std::numeric_limits<double>::infinity();
  }
  r.sr = r.ne_m <= opts.d_th ? 1 : 0;
  double ideal = ep.reference.geodesic_m;
  r.spl = r.sr * ideal / std::max(r.pl_m, ideal);
  r.ndtw = ndtw(g, ep.reference, ep.executed, opts.d_th);
  r.sdtw = r.sr * r.ndtw;
  return r;
}

double step_reward(const PanoGraph& g, const GuidePath& reference,
                   std::span<const std::string> executed_prefix_t,
                   std::span<const std::string> executed_prefix_t_minus_1,
                   bool stopped, const RewardOptions& opts) {
  if (executed_prefix_t.empty() || executed_prefix_t_minus_1.empty()) {
    throw Error("step_reward: empty prefix");
  }
  if (executed_prefix_t_minus_1.size() > executed_prefix_t.size()) {
    throw Error("step_reward: prefixes out of order");
  }
  for (std::size_t i = 0; i < executed_prefix_t_minus_1.size(); ++i) {
    if (executed_prefix_t_minus_1[i] != executed_prefix_t[i]) {
      throw Error("step_reward: prefixes do not share history");
    }
  }
  double reward = ndtw(g, reference, executed_prefix_t, opts.d_th) -
                  ndtw(g, reference, executed_prefix_t_minus_1, opts.d_th);
  if (stopped) {
    auto geo =
        geodesic_distance(g, executed_prefix_t.back(), reference.nodes.back());
    double ne = geo ? *geo : std::numeric_limits<double>::infinity();
    double w1 = opts.w1 ? *opts.w1 : -1.0 / opts.d_th;
    reward += opts.w0 + w1 * ne;
  }
  return reward;
}

QADecision validate_annotation(std::span<const FollowerAttempt> attempts) {
  if (attempts.empty()) throw Error("validate_annotation: no attempts");
  if (attempts.size() > 3) {
    throw Error("validate_annotation: more than three attempts");
  }
  if (attempts.size() == 3) {
    // Best of the three guide-follower pairs, by SDTW, ties by lower index.
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (attempts[i].sdtw > attempts[best].sdtw) best = i;
    }
    return {Verdict::SelectBest, best};
  }
  if (attempts[0].success) return {Verdict::Accept, std::size_t{0}};
  if (attempts.size() == 1) return {Verdict::RetryFollower, std::nullopt};
  if (attempts[1].success) return {Verdict::Accept, std::size_t{1}};
  return {Verdict::ReEnqueuePath, std::nullopt};
}

AggregateReport aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw Error("aggregate: empty report list");
  AggregateReport a;
  a.count = reports.size();
  for (const MetricsReport& r : reports) {
    a.pl_m += r.pl_m;
    a.ne_m += r.ne_m;
    a.sr += r.sr;
    a.spl += r.spl;
    a.ndtw += r.ndtw;
    a.sdtw += r.sdtw;
  }
  double n = static_cast<double>(a.count);
  a.pl_m /= n;
  a.ne_m /= n;
  a.sr /= n;
  a.spl /= n;
  a.ndtw /= n;
  a.sdtw /= n;
  return a;
}

}  // namespace pathkit
