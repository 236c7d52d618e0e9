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

#ifndef PATHKIT_ALIGNMENT_HPP_
#define PATHKIT_ALIGNMENT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathkit {

struct TimedToken {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;

  friend bool operator==(const TimedToken&, const TimedToken&) = default;
};

struct TimedInstruction {
  std::string instruction_id;
  std::string language;  // BCP-47 tag
  std::vector<TimedToken> tokens;
};

/// Local alignment cost: byte-level Levenshtein distance between the
/// ASCII-lowercased strings, normalized by the longer length. 0 for two
/// empty strings. Normalization keeps costs comparable across scripts.
double token_cost(std::string_view a, std::string_view b);

std::vector<std::string> tokenize_whitespace(std::string_view text);

/// Minimum total token_cost over monotone warps of manual against ASR
/// tokens (the same recurrence as positional DTW, over the token lattice).
double alignment_cost(std::span<const std::string> manual,
                      std::span<const TimedToken> asr);

/// Transfers ASR timestamps onto the manual transcription along the
/// minimum-cost warp. Each manual token receives the min/max envelope of
/// the times of its matched ASR tokens. Output token order equals manual
/// order and start times are non-decreasing.
TimedInstruction align_transcript(std::span<const std::string> manual,
                                  std::span<const TimedToken> asr,
                                  std::string instruction_id = "",
                                  std::string language = "en");

}  // namespace pathkit

#endif  // PATHKIT_ALIGNMENT_HPP_
