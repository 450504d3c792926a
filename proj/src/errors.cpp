// Copyright 2026 The qskyrmion Authors
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

#include "qsky/core.hpp"

namespace qsky {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnsupportedInput: return "unsupported input";
    case ErrorKind::kZeroProbability: return "zero probability";
    case ErrorKind::kEmptyState: return "empty state";
    case ErrorKind::kRange: return "out of range";
    case ErrorKind::kEmptyField: return "empty field";
    case ErrorKind::kInsufficientCoverage: return "insufficient coverage";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kFormat: return "format error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace qsky
