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

// Fixture-driven provider: step k of a session (k tokens after the prompt)
// reads row k of a table. See docs/FORMATS.md for the JSON layout.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrcstego/provider.hpp"

namespace rrcstego {

class TableProvider final : public Provider {
 public:
  enum class Mode { kStrict, kCycle };

  struct Row {
    std::vector<TokenId> tokens;
    std::vector<std::string> probs;
  };

  TableProvider(std::vector<Row> rows, Mode mode, std::vector<std::string> vocab = {})
      : mode_(mode), vocab_(std::move(vocab)) {
    if (rows.empty()) throw Error(ErrorCode::kFormat, "table needs at least one step");
    steps_.reserve(rows.size());
    for (auto& row : rows) steps_.push_back(normalize(std::move(row.tokens), row.probs));
  }

  // One repeated row with probabilities `probs` over tokens 0..n-1.
  static TableProvider repeating(std::vector<std::string> probs) {
    Row row;
    for (std::size_t i = 0; i < probs.size(); ++i) row.tokens.push_back(static_cast<TokenId>(i));
    row.probs = std::move(probs);
    return TableProvider({std::move(row)}, Mode::kCycle);
  }

  static TableProvider uniform_binary() { return repeating({"0.5", "0.5"}); }

  static TableProvider from_json(const nlohmann::json& j) {
    try {
      if (j.at("format").get<std::string>() != "rrcstego-table" || j.at("version").get<int>() != 1) {
        throw Error(ErrorCode::kFormat, "not an rrcstego-table v1 document");
      }
      Mode mode = Mode::kStrict;
      if (j.contains("mode")) {
        auto m = j.at("mode").get<std::string>();
        if (m == "cycle") mode = Mode::kCycle;
        else if (m != "strict") throw Error(ErrorCode::kFormat, "unknown table mode '" + m + "'");
      }
      std::vector<std::string> vocab;
      if (j.contains("vocab")) vocab = j.at("vocab").get<std::vector<std::string>>();
      std::vector<Row> rows;
      for (const auto& s : j.at("steps")) {
        Row row;
        row.probs = s.at("probs").get<std::vector<std::string>>();
        if (s.contains("tokens")) {
          row.tokens = s.at("tokens").get<std::vector<TokenId>>();
        } else {
          for (std::size_t i = 0; i < row.probs.size(); ++i) row.tokens.push_back(static_cast<TokenId>(i));
        }
        rows.push_back(std::move(row));
      }
      return TableProvider(std::move(rows), mode, std::move(vocab));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, std::string("table fixture: ") + e.what());
    }
  }

  static TableProvider load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open table fixture " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, path + ": " + e.what());
    }
    return from_json(j);
  }

  DistributionStep next_distribution(const Context& ctx) const override {
    std::size_t k = ctx.step_index();
    if (k >= steps_.size()) {
      if (mode_ == Mode::kStrict) {
        throw Error(ErrorCode::kProviderExhausted,
                    "table has " + std::to_string(steps_.size()) + " steps, step " +
                        std::to_string(k) + " requested");
      }
      k %= steps_.size();
    }
    return steps_[k];
  }

  std::string describe() const override {
    return "table(" + std::to_string(steps_.size()) + " steps, " +
           (mode_ == Mode::kCycle ? "cycle" : "strict") + ")";
  }

  std::optional<std::string> detokenize(std::span<const TokenId> tokens) const override {
    if (vocab_.empty()) return std::nullopt;
    std::string out;
    for (auto t : tokens) {
      if (t >= vocab_.size()) return std::nullopt;
      if (!out.empty()) out += ' ';
      out += vocab_[t];
    }
    return out;
  }

  const std::vector<std::string>& vocab() const { return vocab_; }
  std::size_t rows() const { return steps_.size(); }

 private:
  std::vector<DistributionStep> steps_;
  Mode mode_;
  std::vector<std::string> vocab_;
};

}  // namespace rrcstego
