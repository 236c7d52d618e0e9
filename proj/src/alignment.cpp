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

#include "pathkit/alignment.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "pathkit/error.hpp"

namespace pathkit {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// DP over the token lattice. Returns the cost matrix so the traceback can
// recover matched cells.
std::vector<std::vector<double>> alignment_matrix(
    std::span<const std::string> manual, std::span<const TimedToken> asr) {
  if (manual.empty() || asr.empty()) {
    throw Error("align_transcript: empty token sequence");
  }
  const std::size_t n = manual.size();
  const std::size_t m = asr.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(m));
  cost[0][0] = token_cost(manual[0], asr[0].text);
  for (std::size_t j = 1; j < m; ++j) {
    cost[0][j] = cost[0][j - 1] + token_cost(manual[0], asr[j].text);
  }
  for (std::size_t i = 1; i < n; ++i) {
    cost[i][0] = cost[i - 1][0] + token_cost(manual[i], asr[0].text);
    for (std::size_t j = 1; j < m; ++j) {
      cost[i][j] =
          token_cost(manual[i], asr[j].text) +
          std::min({cost[i - 1][j], cost[i][j - 1], cost[i - 1][j - 1]});
    }
  }
  return cost;
}

}  // namespace

double token_cost(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 0.0;
  std::string la = lowered(a);
  std::string lb = lowered(b);
  return static_cast<double>(levenshtein(la, lb)) /
         static_cast<double>(std::max(la.size(), lb.size()));
}

std::vector<std::string> tokenize_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

double alignment_cost(std::span<const std::string> manual,
                      std::span<const TimedToken> asr) {
  auto cost = alignment_matrix(manual, asr);
  return cost.back().back();
}

TimedInstruction align_transcript(std::span<const std::string> manual,
                                  std::span<const TimedToken> asr,
                                  std::string instruction_id,
                                  std::string language) {
  for (const TimedToken& t : asr) {
    if (t.text.empty()) throw Error("align_transcript: empty ASR token");
    if (!(0.0 <= t.start_s && t.start_s <= t.end_s)) {
      throw Error("align_transcript: invalid interval for '" + t.text + "'");
    }
  }
  for (std::size_t j = 1; j < asr.size(); ++j) {
    if (asr[j].start_s < asr[j - 1].start_s) {
      throw Error("align_transcript: ASR start times must be non-decreasing");
    }
  }
  for (const std::string& t : manual) {
    if (t.empty()) throw Error("align_transcript: empty manual token");
  }

  auto cost = alignment_matrix(manual, asr);
  const std::size_t n = manual.size();
  const std::size_t m = asr.size();

  TimedInstruction instr;
  instr.instruction_id = std::move(instruction_id);
  instr.language = std::move(language);
  instr.tokens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    instr.tokens[i].text = manual[i];
    instr.tokens[i].start_s = std::numeric_limits<double>::infinity();
    instr.tokens[i].end_s = -std::numeric_limits<double>::infinity();
  }

  // Traceback, preferring the diagonal on ties so identical sequences map
  // one-to-one. Every visited cell (i, j) matches manual[i] with asr[j].
  std::size_t i = n - 1;
  std::size_t j = m - 1;
  while (true) {
    instr.tokens[i].start_s = std::min(instr.tokens[i].start_s, asr[j].start_s);
    instr.tokens[i].end_s = std::max(instr.tokens[i].end_s, asr[j].end_s);
    if (i == 0 && j == 0) break;
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else if (cost[i - 1][j - 1] <= cost[i - 1][j] &&
               cost[i - 1][j - 1] <= cost[i][j - 1]) {
      --i;
      --j;
    } else if (cost[i - 1][j] <= cost[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  return instr;
}

}  // namespace pathkit
