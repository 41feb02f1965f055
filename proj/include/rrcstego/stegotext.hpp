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

// Token-list exchange file:
//
//   rrcstego-stegotext v1\n
//   tokens <N>\n
//   <id> <id> ... <id>\n        (N decimal ids separated by one space)

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rrcstego/error.hpp"
#include "rrcstego/exact.hpp"

namespace rrcstego {

inline constexpr std::string_view kStegotextMagic = "rrcstego-stegotext v1";

inline std::string format_stegotext(std::span<const TokenId> tokens) {
  std::string out(kStegotextMagic);
  out += "\ntokens " + std::to_string(tokens.size()) + "\n";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(tokens[i]);
  }
  out += '\n';
  return out;
}

inline std::vector<TokenId> parse_stegotext(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kStegotextMagic) {
    throw Error(ErrorCode::kFormat, "not an rrcstego-stegotext v1 file");
  }
  std::string key;
  std::size_t count = 0;
  if (!(in >> key >> count) || key != "tokens") throw Error(ErrorCode::kFormat, "missing token count");
  std::vector<TokenId> tokens;
  tokens.reserve(count);
  std::string word;
  while (in >> word) {
    if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos || word.size() > 10) {
      throw Error(ErrorCode::kFormat, "bad token id '" + word + "'");
    }
    unsigned long v = std::stoul(word);
    if (v > 0xffffffffUL) throw Error(ErrorCode::kFormat, "token id too large");
    tokens.push_back(static_cast<TokenId>(v));
  }
  if (tokens.size() != count) {
    throw Error(ErrorCode::kFormat, "header says " + std::to_string(count) + " tokens, found " +
                                        std::to_string(tokens.size()));
  }
  return tokens;
}

inline std::vector<TokenId> read_stegotext(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open stegotext " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_stegotext(ss.str());
}

inline void write_stegotext(const std::string& path, std::span<const TokenId> tokens) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << format_stegotext(tokens);
}

}  // namespace rrcstego
