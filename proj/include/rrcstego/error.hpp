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

#include <stdexcept>
#include <string>
#include <string_view>

namespace rrcstego {

enum class ErrorCode {
  kInvalidArgument,
  kAllZero,
  kOutOfRange,
  kOverflow,
  kFormat,
  kEmptyCorpus,
  kProviderExhausted,
  kRemoteUnavailable,
  kNonDeterministicResponse,
  kProtocol,
  kTokenNotInSupport,
  kMaxStepsExceeded,
  kMessageOutOfRange,
  kEmptyStegotext,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAllZero: return "AllZero";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kProviderExhausted: return "ProviderExhausted";
    case ErrorCode::kRemoteUnavailable: return "RemoteUnavailable";
    case ErrorCode::kNonDeterministicResponse: return "NonDeterministicResponse";
    case ErrorCode::kProtocol: return "ProtocolError";
    case ErrorCode::kTokenNotInSupport: return "TokenNotInSupport";
    case ErrorCode::kMaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::kMessageOutOfRange: return "MessageOutOfRange";
    case ErrorCode::kEmptyStegotext: return "EmptyStegotext";
  }
  return "Unknown";
}

// True for failures that originate in the distribution source rather than in
// the codec or the caller's arguments.
constexpr bool is_provider_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kProviderExhausted:
    case ErrorCode::kRemoteUnavailable:
    case ErrorCode::kNonDeterministicResponse:
    case ErrorCode::kProtocol:
    case ErrorCode::kEmptyCorpus:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rrcstego
