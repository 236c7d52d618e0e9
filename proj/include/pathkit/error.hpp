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

#ifndef PATHKIT_ERROR_HPP_
#define PATHKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pathkit {

/// Raised for invalid inputs: malformed documents, unknown ids, violated
/// preconditions. Internal invariant breakage uses std::logic_error instead,
/// so callers can map the two to different exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pathkit

#endif  // PATHKIT_ERROR_HPP_
