// Copyright 2026 The binomap Authors.
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

#include "binomap/error.hpp"

namespace binomap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::InvalidRotation: return "InvalidRotation";
    case ErrorKind::DegenerateHand: return "DegenerateHand";
    case ErrorKind::NoValidPoint: return "NoValidPoint";
    case ErrorKind::BehindCamera: return "BehindCamera";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::EmptySlice: return "EmptySlice";
    case ErrorKind::NoAlignedPair: return "NoAlignedPair";
    case ErrorKind::AllAttemptsFailed: return "AllAttemptsFailed";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FormatError:
    case ErrorKind::InvalidConfig:
    case ErrorKind::UnknownScenario:
      return 2;
    case ErrorKind::AllAttemptsFailed:
      return 4;
    default:
      return 3;
  }
}

}  // namespace binomap
