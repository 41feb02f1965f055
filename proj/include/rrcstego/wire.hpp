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

// Distribution provider wire protocol, version 1.
//
// Every message is one compact JSON object (no insignificant whitespace,
// keys in lexicographic order, UTF-8) followed by a single '\n'. The client
// sends one request and reads exactly one reply before sending the next.
//
//   {"context":[3,1,4],"session":"s1","type":"next","v":1}
//   {"probs":["0.65","0.2"],"session":"s1","tokens":[7,9],"type":"dist","v":1}
//   {"type":"health","v":1}            -> {"model":"...","type":"ok","v":1}
//   {"tokens":[7,9],"type":"detokenize","v":1} -> {"text":"...","type":"text","v":1}
//   any failure                        -> {"message":"...","type":"error","v":1}
//
// "probs" are nonnegative decimal strings, one per token id; the receiver
// renormalizes them by their exact sum and drops zeros.

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrcstego/provider.hpp"

namespace rrcstego::wire {

inline constexpr int kVersion = 1;

inline std::string encode(const nlohmann::json& message) { return message.dump() + "\n"; }

inline nlohmann::json decode(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProtocol, std::string("malformed frame: ") + e.what());
  }
  if (!j.is_object() || !j.contains("v") || !j.contains("type")) {
    throw Error(ErrorCode::kProtocol, "frame lacks 'v' or 'type'");
  }
  if (j.at("v") != kVersion) {
    throw Error(ErrorCode::kProtocol, "unsupported protocol version " + j.at("v").dump());
  }
  return j;
}

inline nlohmann::json next_request(const std::string& session, const std::vector<TokenId>& context) {
  return {{"v", kVersion}, {"type", "next"}, {"session", session}, {"context", context}};
}

inline nlohmann::json health_request() { return {{"v", kVersion}, {"type", "health"}}; }

inline nlohmann::json detokenize_request(const std::vector<TokenId>& tokens) {
  return {{"v", kVersion}, {"type", "detokenize"}, {"tokens", tokens}};
}

inline nlohmann::json error_frame(const std::string& message) {
  return {{"v", kVersion}, {"type", "error"}, {"message", message}};
}

// Integer weights over the step's common denominator; exact, and normalize()
// on the other side recovers the same probabilities.
inline nlohmann::json dist_response(const std::string& session, const DistributionStep& step) {
  std::vector<std::string> probs;
  probs.reserve(step.size());
  const auto& c = step.cum_numerators();
  for (std::size_t i = 0; i < step.size(); ++i) probs.push_back(Integer(c[i + 1] - c[i]).get_str());
  return {{"v", kVersion}, {"type", "dist"}, {"session", session}, {"tokens", step.tokens()},
          {"probs", probs}};
}

inline DistributionStep parse_dist(const nlohmann::json& j) {
  if (j.at("type") == "error") {
    throw Error(ErrorCode::kRemoteUnavailable,
                "remote reported: " + j.value("message", std::string("(no message)")));
  }
  if (j.at("type") != "dist") throw Error(ErrorCode::kProtocol, "expected a 'dist' frame");
  try {
    auto tokens = j.at("tokens").get<std::vector<TokenId>>();
    auto probs = j.at("probs").get<std::vector<std::string>>();
    return normalize(std::move(tokens), probs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProtocol, std::string("bad 'dist' frame: ") + e.what());
  }
}

// Answers requests from `in` until EOF using `provider`. Errors are reported
// as error frames and the loop continues, except for unparseable frames,
// after which the server sends an error frame and stops. The first
// `prompt_size` context ids of each request are treated as the prompt, which
// matters for position-indexed providers such as tables.
inline void serve(const Provider& provider, std::istream& in, std::ostream& out,
                  const std::string& model_name, std::size_t prompt_size = 0) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json req;
    try {
      req = decode(line);
    } catch (const Error& e) {
      out << encode(error_frame(e.what())) << std::flush;
      return;
    }
    nlohmann::json reply;
    try {
      const std::string type = req.at("type").get<std::string>();
      if (type == "health") {
        reply = {{"v", kVersion}, {"type", "ok"}, {"model", model_name}};
      } else if (type == "next") {
        auto ids = req.at("context").get<std::vector<TokenId>>();
        if (ids.size() < prompt_size) throw Error(ErrorCode::kInvalidArgument, "context shorter than prompt");
        Context ctx(std::vector<TokenId>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(prompt_size)));
        for (std::size_t i = prompt_size; i < ids.size(); ++i) ctx.append(ids[i]);
        reply = dist_response(req.value("session", std::string()), provider.next_distribution(ctx));
      } else if (type == "detokenize") {
        auto tokens = req.at("tokens").get<std::vector<TokenId>>();
        auto text = provider.detokenize(tokens);
        reply = text ? nlohmann::json{{"v", kVersion}, {"type", "text"}, {"text", *text}}
                     : error_frame("provider cannot detokenize");
      } else {
        reply = error_frame("unknown message type '" + type + "'");
      }
    } catch (const std::exception& e) {
      reply = error_frame(e.what());
    }
    out << encode(reply) << std::flush;
  }
}

}  // namespace rrcstego::wire
