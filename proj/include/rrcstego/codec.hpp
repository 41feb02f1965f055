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

// Uniform entry point over the two codecs.

#pragma once

#include <optional>
#include <string>

#include "rrcstego/codec_rrc.hpp"
#include "rrcstego/codec_vanilla.hpp"

namespace rrcstego {

enum class CodecKind { kVanilla, kRrc };

inline CodecKind parse_codec_kind(const std::string& name) {
  if (name == "rrc") return CodecKind::kRrc;
  if (name == "vanilla") return CodecKind::kVanilla;
  throw Error(ErrorCode::kInvalidArgument, "codec must be 'rrc' or 'vanilla'");
}

inline const char* codec_name(CodecKind kind) { return kind == CodecKind::kRrc ? "rrc" : "vanilla"; }

struct CodecConfig {
  CodecKind kind = CodecKind::kRrc;
  // Required for rrc, must be absent for vanilla.
  std::optional<StegoKey> key;
  unsigned offset_resolution = OffsetStream::kDefaultResolution;
  std::size_t max_steps_per_bit = 64;

  void validate() const {
    if (kind == CodecKind::kRrc && !key) throw Error(ErrorCode::kInvalidArgument, "rrc needs a key");
    if (kind == CodecKind::kVanilla && key) {
      throw Error(ErrorCode::kInvalidArgument, "vanilla codec takes no key");
    }
  }
};

inline EmbedResult embed(const Provider& provider, const Context& ctx, const CodecConfig& config,
                         const BitString& message, StepObserver observer = {}) {
  config.validate();
  if (config.kind == CodecKind::kVanilla) {
    CodecOptions opts;
    opts.max_steps_per_bit = config.max_steps_per_bit;
    opts.observer = std::move(observer);
    return embed_vanilla(provider, ctx, message, opts);
  }
  RrcOptions opts;
  opts.max_steps_per_bit = config.max_steps_per_bit;
  opts.observer = std::move(observer);
  opts.offset_resolution = config.offset_resolution;
  return embed_rrc(provider, ctx, *config.key, message, opts);
}

inline BitString extract(const Provider& provider, const Context& ctx, const CodecConfig& config,
                         std::size_t bits, std::span<const TokenId> tokens) {
  config.validate();
  if (config.kind == CodecKind::kVanilla) return extract_vanilla(provider, ctx, bits, tokens);
  return extract_rrc(provider, ctx, *config.key, bits, tokens, config.offset_resolution);
}

}  // namespace rrcstego
