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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace binomap {

enum class ErrorKind {
  DegenerateInput,
  InvalidRotation,
  DegenerateHand,
  NoValidPoint,
  BehindCamera,
  Unreachable,
  DegenerateGeometry,
  EmptySlice,
  NoAlignedPair,
  AllAttemptsFailed,
  PreconditionViolation,
  FormatError,
  InvalidConfig,
  UnknownScenario,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for a failure of the given kind:
/// 2 input/format error, 3 precondition violation, 4 AllAttemptsFailed.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::int64_t> frame_index = std::nullopt)
      : std::runtime_error(message), kind_(kind), frame_index_(frame_index) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<std::int64_t>& frame_index() const { return frame_index_; }

  /// Pipeline stage that raised the error ("retarget", "smooth", ...), if known.
  const std::string& stage() const { return stage_; }
  Error& with_stage(std::string stage) {
    stage_ = std::move(stage);
    return *this;
  }
  Error& with_frame(std::int64_t frame_index) {
    frame_index_ = frame_index;
    return *this;
  }

 private:
  ErrorKind kind_;
  std::optional<std::int64_t> frame_index_;
  std::string stage_;
};

}  // namespace binomap
