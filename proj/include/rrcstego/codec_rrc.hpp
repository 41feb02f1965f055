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

// Rotation range-coding steganography.
//
// Before every token the message point d is rotated inside the active
// interval [L, R) by a keyed offset o(t) in [0, 1):
//
//   d' = L + (d - L + o * (R - L)) mod (R - L)
//
// which makes d' uniform on [L, R) for a uniform o, so the token whose
// sub-interval contains d' is drawn with exactly its model probability.
// Embedding stops once the midpoint of the narrowed interval lies within
// (-1/2, 1/2] of d'. The receiver replays the narrowing, starts from that
// midpoint, undoes the rotations from the last step back to the first and
// rounds (ties down) to recover the message integer.
//
// Undoing a rotation works modulo the interval width, so when the rotated
// point sits within 1/2 of an interval edge the receiver's running midpoint
// can wrap to the far side and the recovered integer is wrong. By default
// the sender therefore only stops at a step where the receiver's replay
// actually reproduces the message, and keeps emitting tokens otherwise.
// `RrcOptions::verify_on_stop = false` gives the bare midpoint rule.

#pragma once

#include <span>
#include <vector>

#include "rrcstego/bits.hpp"
#include "rrcstego/keystream.hpp"
#include "rrcstego/provider.hpp"
#include "rrcstego/session.hpp"

namespace rrcstego {

inline ExactNumber rotate(const ExactNumber& point, const Interval& iv, const ExactNumber& offset) {
  const ExactNumber width = iv.width();
  return iv.lo() + exact_mod(point - iv.lo() + offset * width, width);
}

inline ExactNumber rotate_inverse(const ExactNumber& point, const Interval& iv,
                                  const ExactNumber& offset) {
  const ExactNumber width = iv.width();
  return iv.lo() + exact_mod(point - iv.lo() - offset * width, width);
}

// (L + R)/2 - point in (-1/2, 1/2].
inline bool termination_predicate(const Interval& iv, const ExactNumber& point) {
  static const ExactNumber kHalf(1, 2);
  ExactNumber gap = iv.midpoint() - point;
  return -kHalf < gap && gap <= kHalf;
}

struct RrcOptions : CodecOptions {
  unsigned offset_resolution = OffsetStream::kDefaultResolution;
  bool verify_on_stop = true;
};

namespace detail {

// Walks the rotations back from the midpoint of `last`; returns the point
// the receiver assigns to the original message.
inline ExactNumber unwind_rotations(std::span<const TraceStep> steps, const Interval& last,
                                    const OffsetStream& offsets) {
  ExactNumber mid = last.midpoint();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const ExactNumber o = it->offset ? *it->offset : offsets.offset(it->t);
    mid = rotate_inverse(mid, it->before, o);
  }
  return mid;
}

}  // namespace detail

inline EmbedResult embed_rrc(const Provider& provider, Context ctx, const StegoKey& key,
                             const BitString& message, const RrcOptions& options = {}) {
  if (message.empty()) throw Error(ErrorCode::kInvalidArgument, "message must have at least one bit");
  const OffsetStream offsets(key, options.offset_resolution);
  const Integer value = bits_to_decimal(message);
  const std::size_t cap = options.max_steps_per_bit * message.size();

  EmbedResult result;
  ExactNumber point(value);
  Interval iv = Interval::message_space(message.size());
  for (std::uint64_t t = 0; t < cap; ++t) {
    DistributionStep step = rescale(provider.next_distribution(ctx), iv);
    ExactNumber o = offsets.offset(t);
    point = rotate(point, iv, o);
    std::size_t i = locate(step, point);
    TraceStep rec{t, iv, step.sub_interval(i), i, step.tokens()[i], std::move(o), point};
    if (options.observer) options.observer(StepEvent{rec, step});
    iv = rec.after;
    ctx.append(rec.token);
    result.tokens.push_back(rec.token);
    result.trace.steps.push_back(std::move(rec));

    if (!termination_predicate(iv, point)) continue;
    if (!result.trace.first_predicate_step) result.trace.first_predicate_step = t;
    if (!options.verify_on_stop) return result;
    if (round_half_down(detail::unwind_rotations(result.trace.steps, iv, offsets)) == value) {
      return result;
    }
    ++result.trace.deferred_terminations;
  }
  throw Error(ErrorCode::kMaxStepsExceeded, "no termination after " + std::to_string(cap) + " tokens");
}

inline BitString extract_rrc(const Provider& provider, Context ctx, const StegoKey& key,
                             std::size_t bits, std::span<const TokenId> tokens,
                             unsigned offset_resolution = OffsetStream::kDefaultResolution,
                             SessionTrace* trace = nullptr) {
  if (bits == 0) throw Error(ErrorCode::kInvalidArgument, "message length must be positive");
  if (tokens.empty()) throw Error(ErrorCode::kEmptyStegotext, "stegotext has no tokens");
  const OffsetStream offsets(key, offset_resolution);

  std::vector<TraceStep> steps;
  steps.reserve(tokens.size());
  Interval iv = Interval::message_space(bits);
  std::uint64_t t = 0;
  for (TokenId token : tokens) {
    DistributionStep step = rescale(provider.next_distribution(ctx), iv);
    std::size_t i = step.index_of(token);
    Interval next = step.sub_interval(i);
    steps.push_back(TraceStep{t, iv, next, i, token, offsets.offset(t), std::nullopt});
    iv = std::move(next);
    ctx.append(token);
    ++t;
  }

  Integer value = round_half_down(detail::unwind_rotations(steps, iv, offsets));
  if (trace) trace->steps = std::move(steps);
  if (sgn(value) < 0 || value >= pow2(bits)) {
    throw Error(ErrorCode::kMessageOutOfRange,
                "recovered value " + value.get_str() + " is outside [0, 2^" + std::to_string(bits) +
                    "); wrong key or provider?");
  }
  return decimal_to_bits(value, bits);
}

}  // namespace rrcstego
