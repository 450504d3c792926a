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

#ifndef QSKY_CORE_HPP
#define QSKY_CORE_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsky {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Dense 2D raster, stored with rows = y index and cols = x index.
template <typename Scalar>
using RealRaster = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexRaster = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using MaskRaster = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

enum class ErrorKind {
  kUnsupportedInput,
  kZeroProbability,
  kEmptyState,
  kRange,
  kEmptyField,
  kInsufficientCoverage,
  kDimensionMismatch,
  kPrecondition,
  kFormat,
};

const char* to_string(ErrorKind kind);

/// Base of every error thrown by the toolkit. The kind is what callers
/// (notably the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define QSKY_DEFINE_ERROR(Name, Kind)                                    \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

QSKY_DEFINE_ERROR(UnsupportedInputError, kUnsupportedInput)
QSKY_DEFINE_ERROR(ZeroProbabilityError, kZeroProbability)
QSKY_DEFINE_ERROR(EmptyStateError, kEmptyState)
QSKY_DEFINE_ERROR(RangeError, kRange)
QSKY_DEFINE_ERROR(EmptyFieldError, kEmptyField)
QSKY_DEFINE_ERROR(InsufficientCoverageError, kInsufficientCoverage)
QSKY_DEFINE_ERROR(DimensionMismatchError, kDimensionMismatch)
QSKY_DEFINE_ERROR(PreconditionError, kPrecondition)
QSKY_DEFINE_ERROR(FormatError, kFormat)

#undef QSKY_DEFINE_ERROR

/// Heralding and projection outcomes below this probability are rejected.
inline constexpr double kMinProbability = 1e-12;

}  // namespace qsky

#endif  // QSKY_CORE_HPP
