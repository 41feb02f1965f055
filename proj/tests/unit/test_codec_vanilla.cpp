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

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace rrcstego {
namespace {

using testing::q;

BitString bits16(unsigned v) { return decimal_to_bits(Integer(v), 16); }

TEST(Vanilla, FourTokenFirstStep) {
  auto p = testing::four_token();
  auto r = embed_vanilla(p, Context(), BitString("0100111011111011"));
  ASSERT_FALSE(r.tokens.empty());
  EXPECT_EQ(p.vocab()[r.tokens[0]], "coli");
  EXPECT_EQ(r.trace.steps[0].after, Interval(q(0), q(212992, 5)));
  EXPECT_EQ(r.trace.steps[0].before, Interval::message_space(16));
  // Token indices of the full session, from tests/oracles/oracles.py.
  std::vector<std::size_t> idx;
  for (const auto& s : r.trace.steps) idx.push_back(s.index);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 0, 1, 0, 0, 2, 3, 2}));
}

TEST(Vanilla, FourTokenRoundTrip) {
  auto p = testing::four_token();
  auto r = embed_vanilla(p, Context(), bits16(20219));
  EXPECT_EQ(bits_to_decimal(extract_vanilla(p, Context(), 16, r.tokens)), 20219);
}

TEST(Vanilla, OneBitHandTrace) {
  auto p = TableProvider::uniform_binary();
  // [0, 2) has midpoint 1, which rounds to 1, so "0" needs the half [0, 1).
  auto r = embed_vanilla(p, Context(), BitString("0"));
  ASSERT_EQ(r.tokens.size(), 1u);
  EXPECT_EQ(r.tokens[0], 0u);
  EXPECT_EQ(r.trace.steps[0].after, Interval(q(0), q(1)));
  EXPECT_EQ(round_half_down(r.trace.steps[0].after.midpoint()), 0);
}

TEST(Vanilla, MidpointMessageNeedsNoTokens) {
  auto p = TableProvider::uniform_binary();
  EXPECT_TRUE(embed_vanilla(p, Context(), BitString("1")).tokens.empty());
  EXPECT_TRUE(embed_vanilla(p, Context(), bits16(32768)).tokens.empty());
}

TEST(Vanilla, EmptyTokenListDecodesToMidpoint) {
  auto p = testing::four_token();
  EXPECT_EQ(bits_to_decimal(extract_vanilla(p, Context(), 16, {})), 32768);
  EXPECT_EQ(extract_vanilla(p, Context(), 1, {}).str(), "1");
}

TEST(Vanilla, AllEightBitMessages) {
  auto p = testing::four_token();
  for (unsigned v = 0; v < 256; ++v) {
    auto m = decimal_to_bits(Integer(v), 8);
    auto r = embed_vanilla(p, Context(), m);
    ASSERT_EQ(extract_vanilla(p, Context(), 8, r.tokens), m) << v;
  }
}

TEST(Vanilla, SingleTokenProviderHitsCap) {
  auto p = TableProvider::repeating({"1"});
  try {
    embed_vanilla(p, Context(), bits16(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMaxStepsExceeded);
  }
}

TEST(Vanilla, TokenOutsideSupport) {
  auto p = testing::four_token();
  std::vector<TokenId> toks{0, 9};
  try {
    extract_vanilla(p, Context(), 16, toks);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTokenNotInSupport);
  }
}

}  // namespace
}  // namespace rrcstego
