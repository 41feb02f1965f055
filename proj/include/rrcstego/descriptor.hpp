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

#include <memory>
#include <string>

#include "rrcstego/ngram.hpp"
#include "rrcstego/remote_provider.hpp"
#include "rrcstego/table_provider.hpp"

namespace rrcstego {

// "table:PATH", "ngram:PATH", "remote:tcp:HOST:PORT" or "remote:exec:COMMAND".
struct ProviderDescriptor {
  enum class Kind { kTable, kNgram, kRemote };

  Kind kind;
  std::string target;

  static ProviderDescriptor parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon + 1 == spec.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "provider must look like table:PATH, ngram:PATH or remote:ENDPOINT");
    }
    std::string kind = spec.substr(0, colon);
    std::string target = spec.substr(colon + 1);
    if (kind == "table") return {Kind::kTable, target};
    if (kind == "ngram") return {Kind::kNgram, target};
    if (kind == "remote") return {Kind::kRemote, target};
    throw Error(ErrorCode::kInvalidArgument, "unknown provider kind '" + kind + "'");
  }

  std::string str() const {
    switch (kind) {
      case Kind::kTable: return "table:" + target;
      case Kind::kNgram: return "ngram:" + target;
      case Kind::kRemote: return "remote:" + target;
    }
    return target;
  }
};

inline std::unique_ptr<Provider> open_provider(const ProviderDescriptor& d,
                                               RemoteOptions remote_options = {}) {
  switch (d.kind) {
    case ProviderDescriptor::Kind::kTable:
      return std::make_unique<TableProvider>(TableProvider::load(d.target));
    case ProviderDescriptor::Kind::kNgram:
      return std::make_unique<NgramProvider>(NgramModel::load(d.target));
    case ProviderDescriptor::Kind::kRemote:
      return RemoteProvider::open(d.target, std::move(remote_options));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown provider kind");
}

}  // namespace rrcstego
