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

#include "tsmix/error.hpp"

namespace tsmix {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SampleRateMismatch: return "SampleRateMismatch";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::BandOutOfRange: return "BandOutOfRange";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::FrequencyNotOnBin: return "FrequencyNotOnBin";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::DuplicateChannel: return "DuplicateChannel";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::ConstantChannel: return "ConstantChannel";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace tsmix
