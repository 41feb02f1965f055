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

#include <set>

#include "test_util.hpp"

namespace rrcstego {
namespace {

std::string hex(const std::array<std::uint8_t, 32>& block) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : block) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

// Reference values from tests/oracles/oracles.py (Python hmac/hashlib).
TEST(Keystream, HmacVector) {
  OffsetStream s(testing::test_key());
  EXPECT_EQ(hex(s.block(0)), "9f0cd9b94097fe4929918d2b8942b34439574261a35dc50163f06c67d4e48899");
}

TEST(Keystream, OffsetVectors) {
  OffsetStream s(testing::test_key());
  EXPECT_EQ(to_fraction_string(s.offset(0)),
            "52853493713047222133163582504859380945/85070591730234615865843651857942052864");
  EXPECT_EQ(to_fraction_string(s.offset(1)),
            "130396426194161855362837174591632344091/170141183460469231731687303715884105728");
  EXPECT_EQ(to_fraction_string(s.offset(7)),
            "73464367895679839803949552413118280449/85070591730234615865843651857942052864");
  EXPECT_EQ(to_fraction_string(OffsetStream(testing::test_key(), 5).offset(0)), "19/32");
  EXPECT_EQ(to_fraction_string(OffsetStream(testing::test_key(), 256).offset(3)),
            "17053128107676854914434953575286944270872146249128062043626472193040668548211/"
            "28948022309329048855892746252171976963317496166410141009864396001978282409984");
}

TEST(Keystream, Deterministic) {
  OffsetStream a(testing::test_key()), b(testing::test_key());
  for (std::uint64_t t : {0ull, 5ull, 1000000ull}) {
    EXPECT_EQ(a.offset(t), a.offset(t));
    EXPECT_EQ(a.offset(t), b.offset(t));
  }
}

TEST(Keystream, ConsecutiveOffsetsDistinct) {
  OffsetStream s(testing::test_key());
  std::set<std::string> seen;
  for (std::uint64_t t = 0; t < 10000; ++t) seen.insert(to_fraction_string(s.offset(t)));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Keystream, MeanNearHalf) {
  OffsetStream s(testing::key_from_seed(3));
  double sum = 0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    ExactNumber o = s.offset(t);
    ASSERT_TRUE(o >= 0 && o < 1);
    sum += to_double(o);
  }
  double mean = sum / 100000;
  EXPECT_GE(mean, 0.49);
  EXPECT_LE(mean, 0.51);
}

TEST(Keystream, RandomAccessOrder) {
  OffsetStream s(testing::test_key());
  std::vector<ExactNumber> forward;
  for (std::uint64_t t = 0; t < 64; ++t) forward.push_back(s.offset(t));
  for (std::uint64_t t = 64; t-- > 0;) EXPECT_EQ(s.offset(t), forward[t]);
}

TEST(Keystream, KeysDiffer) {
  EXPECT_NE(OffsetStream(testing::key_from_seed(1)).offset(0), OffsetStream(testing::key_from_seed(2)).offset(0));
}

TEST(Keystream, Validation) {
  EXPECT_THROW(OffsetStream(testing::test_key(), 0), Error);
  EXPECT_THROW(OffsetStream(testing::test_key(), 257), Error);
  EXPECT_THROW(StegoKey(std::vector<std::uint8_t>{}), Error);
  EXPECT_THROW(StegoKey::from_hex("abc"), Error);
  EXPECT_EQ(StegoKey::from_hex("00ff").to_hex(), "00ff");
  EXPECT_EQ(testing::test_key().strength_bits(), 256u);
}

}  // namespace
}  // namespace rrcstego
