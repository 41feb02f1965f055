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

// Plain range-coding steganography: the message integer is a fixed point in
// [0, 2^l) and each token narrows the interval around it until the rounded
// midpoint identifies it. Not secure (the induced token distribution is
// distorted); kept as a baseline.

#pragma once

#include <span>

#include "rrcstego/bits.hpp"
#include "rrcstego/provider.hpp"
#include "rrcstego/session.hpp"

namespace rrcstego {

inline EmbedResult embed_vanilla(const Provider& provider, Context ctx, const BitString& message,
                                 const CodecOptions& options = {}) {
  if (message.empty()) throw Error(ErrorCode::kInvalidArgument, "message must have at least one bit");
  const ExactNumber point(bits_to_decimal(message));
  const std::size_t cap = options.max_steps_per_bit * message.size();

  EmbedResult result;
  Interval iv = Interval::message_space(message.size());
  for (std::uint64_t t = 0; round_half_down(iv.midpoint()) != point.get_num(); ++t) {
    if (t >= cap) {
      throw Error(ErrorCode::kMaxStepsExceeded,
                  "no termination after " + std::to_string(cap) + " tokens");
    }
    DistributionStep step = rescale(provider.next_distribution(ctx), iv);
    std::size_t i = locate(step, point);
    TraceStep rec{t, iv, step.sub_interval(i), i, step.tokens()[i], std::nullopt, std::nullopt};
    if (options.observer) options.observer(StepEvent{rec, step});
    iv = rec.after;
    ctx.append(rec.token);
    result.tokens.push_back(rec.token);
    result.trace.steps.push_back(std::move(rec));
  }
  return result;
}

inline BitString extract_vanilla(const Provider& provider, Context ctx, std::size_t bits,
                                 std::span<const TokenId> tokens, SessionTrace* trace = nullptr) {
  if (bits == 0) throw Error(ErrorCode::kInvalidArgument, "message length must be positive");
  Interval iv = Interval::message_space(bits);
  std::uint64_t t = 0;
  for (TokenId token : tokens) {
    DistributionStep step = rescale(provider.next_distribution(ctx), iv);
    std::size_t i = step.index_of(token);
    Interval next = step.sub_interval(i);
    if (trace) trace->steps.push_back(TraceStep{t, iv, next, i, token, std::nullopt, std::nullopt});
    iv = std::move(next);
    ctx.append(token);
    ++t;
  }
  Integer value = round_half_down(iv.midpoint());
  if (value >= pow2(bits)) {
    throw Error(ErrorCode::kMessageOutOfRange, "recovered value does not fit in the message length");
  }
  return decimal_to_bits(value, bits);
}

}  // namespace rrcstego
