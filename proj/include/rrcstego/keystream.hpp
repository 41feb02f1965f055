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

// Keyed offset stream. The offset for step t is
//
//   k = first ceil(r/8) bytes of HMAC-SHA256(key, uint64_be(t)), big-endian,
//       shifted right by 8*ceil(r/8) - r bits
//   o(t) = k / 2^r
//
// where r is the resolution in bits (1..256, default 128). Each step is
// addressed directly by its counter, so extraction can walk the steps
// backwards without replaying a generator.

#pragma once

#include <sodium.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrcstego/error.hpp"
#include "rrcstego/exact.hpp"

namespace rrcstego {

class StegoKey {
 public:
  static constexpr std::size_t kDefaultLength = 32;

  explicit StegoKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty()) throw Error(ErrorCode::kInvalidArgument, "key must not be empty");
  }

  static StegoKey from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw Error(ErrorCode::kFormat, "key hex has odd length");
    std::vector<std::uint8_t> bytes(hex.size() / 2);
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      throw Error(ErrorCode::kFormat, "invalid hex digit in key");
    };
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return StegoKey(std::move(bytes));
  }

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  // Security parameter in bits.
  std::size_t strength_bits() const { return bytes_.size() * 8; }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (auto b : bytes_) {
      out.push_back(kDigits[b >> 4]);
      out.push_back(kDigits[b & 15]);
    }
    return out;
  }

  bool operator==(const StegoKey&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

class OffsetStream {
 public:
  static constexpr unsigned kDefaultResolution = 128;
  static constexpr unsigned kMaxResolution = 256;

  explicit OffsetStream(const StegoKey& key, unsigned resolution = kDefaultResolution)
      : resolution_(resolution), denominator_(pow2(resolution)) {
    if (resolution == 0 || resolution > kMaxResolution) {
      throw Error(ErrorCode::kInvalidArgument, "offset resolution must be in 1..256 bits");
    }
    if (sodium_init() < 0) throw Error(ErrorCode::kInvalidArgument, "libsodium failed to initialize");
    crypto_auth_hmacsha256_init(&keyed_, key.bytes().data(), key.bytes().size());
  }

  unsigned resolution() const { return resolution_; }

  // Raw PRF output for step t (32 bytes).
  std::array<std::uint8_t, 32> block(std::uint64_t t) const {
    std::array<std::uint8_t, 8> counter;
    for (int i = 7; i >= 0; --i) {
      counter[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(t & 0xff);
      t >>= 8;
    }
    crypto_auth_hmacsha256_state state = keyed_;
    std::array<std::uint8_t, 32> out;
    crypto_auth_hmacsha256_update(&state, counter.data(), counter.size());
    crypto_auth_hmacsha256_final(&state, out.data());
    return out;
  }

  // Numerator k of o(t) = k / 2^resolution.
  Integer numerator(std::uint64_t t) const {
    auto out = block(t);
    std::size_t nbytes = (resolution_ + 7) / 8;
    Integer k;
    mpz_import(k.get_mpz_t(), nbytes, 1, 1, 1, 0, out.data());
    std::size_t excess = nbytes * 8 - resolution_;
    if (excess) k >>= static_cast<mp_bitcnt_t>(excess);
    return k;
  }

  ExactNumber offset(std::uint64_t t) const {
    return make_exact(numerator(t), denominator_);
  }

 private:
  unsigned resolution_;
  Integer denominator_;
  crypto_auth_hmacsha256_state keyed_{};
};

}  // namespace rrcstego
