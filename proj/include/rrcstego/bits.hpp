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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrcstego/error.hpp"
#include "rrcstego/exact.hpp"

namespace rrcstego {

// A secret message as an ordered sequence of bits, most significant first.
class BitString {
 public:
  BitString() = default;

  // Accepts only '0' and '1'.
  explicit BitString(std::string_view bits) : bits_(bits) {
    for (char c : bits_) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kFormat, "bit string may only contain '0' and '1'");
      }
    }
  }

  static BitString zeros(std::size_t length) { return BitString(std::string(length, '0')); }

  // Leading `length` bits of `bytes`, MSB of the first byte first.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
    if (length > bytes.size() * 8) {
      throw Error(ErrorCode::kInvalidArgument,
                  "need " + std::to_string(length) + " bits but only " +
                      std::to_string(bytes.size() * 8) + " are available");
    }
    std::string s(length, '0');
    for (std::size_t i = 0; i < length; ++i) {
      if ((bytes[i / 8] >> (7 - i % 8)) & 1U) s[i] = '1';
    }
    return BitString(s);
  }

  // Hex digits contribute four bits each; the result is then cut to `length`.
  static BitString from_hex(std::string_view hex, std::size_t length) {
    std::string s;
    s.reserve(hex.size() * 4);
    for (char c : hex) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw Error(ErrorCode::kFormat, "invalid hex digit");
      for (int b = 3; b >= 0; --b) s.push_back(((v >> b) & 1) ? '1' : '0');
    }
    if (length > s.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "hex message holds " + std::to_string(s.size()) + " bits, need " +
                      std::to_string(length));
    }
    s.resize(length);
    return BitString(s);
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  const std::string& str() const { return bits_; }

  // Zero-padded on the right to a whole number of bytes.
  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] == '1') out[i / 8] |= static_cast<std::uint8_t>(1U << (7 - i % 8));
    }
    return out;
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
      int v = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        v <<= 1;
        if (i + j < bits_.size() && bits_[i + j] == '1') v |= 1;
      }
      out.push_back(kDigits[v]);
    }
    return out;
  }

  bool operator==(const BitString&) const = default;

 private:
  std::string bits_;
};

inline Integer bits_to_decimal(const BitString& bits) {
  if (bits.empty()) return Integer(0);
  return Integer(bits.str(), 2);
}

// Big-endian, left-padded with zeros to exactly `length` bits.
inline BitString decimal_to_bits(const Integer& value, std::size_t length) {
  if (sgn(value) < 0) throw Error(ErrorCode::kOverflow, "negative value cannot be binarized");
  if (value >= pow2(length)) {
    throw Error(ErrorCode::kOverflow,
                value.get_str() + " does not fit in " + std::to_string(length) + " bits");
  }
  if (length == 0) return BitString();
  std::string s = value.get_str(2);
  if (sgn(value) == 0) s.clear();
  s.insert(0, length - s.size(), '0');
  return BitString(s);
}

}  // namespace rrcstego
