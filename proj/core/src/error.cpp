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

#include "qtp/error.hpp"

namespace qtp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorKind::NotDiagonalInDeclaredBasis: return "NotDiagonalInDeclaredBasis";
    case ErrorKind::DegenerateBasisAmbiguity: return "DegenerateBasisAmbiguity";
    case ErrorKind::NonUnitaryBasis: return "NonUnitaryBasis";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NonRealResult: return "NonRealResult";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::StepUnstable: return "StepUnstable";
    case ErrorKind::ContinuityLoss: return "ContinuityLoss";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::ResonantInput: return "ResonantInput";
    case ErrorKind::NotTwoLevel: return "NotTwoLevel";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& key) {
  std::string out(to_string(kind));
  if (!key.empty()) out += " at '" + key + "'";
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string key_path)
    : std::runtime_error(compose(kind, message, key_path)),
      kind_(kind),
      key_path_(std::move(key_path)) {}

}  // namespace qtp
