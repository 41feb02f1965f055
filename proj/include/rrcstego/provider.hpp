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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrcstego/error.hpp"
#include "rrcstego/exact.hpp"

namespace rrcstego {

// Prompt followed by everything generated so far. Only append() mutates it.
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<TokenId> prompt)
      : tokens_(std::move(prompt)), prompt_size_(tokens_.size()) {}

  const std::vector<TokenId>& tokens() const { return tokens_; }
  std::size_t prompt_size() const { return prompt_size_; }
  // Number of tokens generated after the prompt.
  std::size_t step_index() const { return tokens_.size() - prompt_size_; }
  std::span<const TokenId> generated() const {
    return std::span<const TokenId>(tokens_).subspan(prompt_size_);
  }

  void append(TokenId token) { tokens_.push_back(token); }

 private:
  std::vector<TokenId> tokens_;
  std::size_t prompt_size_ = 0;
};

// Source of next-token distributions. Implementations must be deterministic:
// equal contexts give equal distributions, byte for byte, for the lifetime of
// the object. next_distribution may be called concurrently.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual DistributionStep next_distribution(const Context& ctx) const = 0;

  virtual std::string describe() const = 0;

  // Surface text for a token sequence, where the provider has one.
  virtual std::optional<std::string> detokenize(std::span<const TokenId>) const {
    return std::nullopt;
  }

  // Token ids for surface text, where the provider has a tokenizer.
  virtual std::vector<TokenId> tokenize(std::string_view) const {
    throw Error(ErrorCode::kInvalidArgument, describe() + " has no tokenizer");
  }
};

inline std::size_t token_index_of(const Provider& provider, const Context& ctx, TokenId token) {
  return provider.next_distribution(ctx).index_of(token);
}

}  // namespace rrcstego
