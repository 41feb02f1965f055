// Copyright 2026 The rrcstego Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rrcstego/exact.hpp"

namespace rrcstego {

struct TraceStep {
  std::uint64_t t = 0;
  Interval before;  // active interval when the step started
  Interval after;   // sub-interval of the chosen token
  std::size_t index = 0;
  TokenId token = 0;
  // Rotation offset and rotated point; set by the rotation codec only.
  std::optional<ExactNumber> offset;
  std::optional<ExactNumber> point;
};

struct SessionTrace {
  std::vector<TraceStep> steps;
  // First step at which the midpoint termination test held (rotation codec).
  std::optional<std::size_t> first_predicate_step;
  // Number of times the midpoint test held but the receiver-side replay did
  // not reproduce the message, so embedding continued.
  std::size_t deferred_terminations = 0;
};

// Passed to observers once per emitted token. `step` has been rescaled onto
// record.before.
struct StepEvent {
  const TraceStep& record;
  const DistributionStep& step;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct CodecOptions {
  // Hard cap on emitted tokens is max_steps_per_bit * message length.
  std::size_t max_steps_per_bit = 64;
  StepObserver observer;
};

struct EmbedResult {
  std::vector<TokenId> tokens;
  SessionTrace trace;
};

}  // namespace rrcstego
