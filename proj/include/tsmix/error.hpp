// Copyright (c) 2026, The tsmix Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace tsmix {

enum class ErrorCode {
  NonFinite,
  TooShort,
  ShapeMismatch,
  SampleRateMismatch,
  ZeroSignal,
  BandOutOfRange,
  LambdaOutOfRange,
  InvalidSpec,
  InvalidPolicy,
  InvalidArgument,
  DimensionMismatch,
  ZeroVector,
  UnknownId,
  FrequencyNotOnBin,
  InvalidGrid,
  ParseError,
  BadMagic,
  VersionUnsupported,
  TruncatedFile,
  RaggedRows,
  DuplicateChannel,
  WindowTooLong,
  ConstantChannel,
  SignalTooShort,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this exception; `code()` is the
/// machine-checkable part, `what()` carries the human context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsmix
