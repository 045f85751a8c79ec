// Copyright 2026 The qtp Authors
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

namespace qtp {

enum class ErrorKind {
  NonHermitian,
  NotDensityMatrix,
  NotDiagonalInDeclaredBasis,
  DegenerateBasisAmbiguity,
  NonUnitaryBasis,
  InvalidArgument,
  OutOfTable,
  GridTooCoarse,
  NonRealResult,
  GridMismatch,
  StepUnstable,
  ContinuityLoss,
  NonPositiveTemperature,
  ResonantInput,
  NotTwoLevel,
  ConfigParse,
  Validation,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string key_path = {});

  ErrorKind kind() const { return kind_; }
  // Slash-separated config location, e.g. "grid/steps"; empty if not tied to a key.
  const std::string& key_path() const { return key_path_; }

 private:
  ErrorKind kind_;
  std::string key_path_;
};

}  // namespace qtp
