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

#include "qsky/modes.hpp"

namespace qsky {

void GridSpec::validate() const {
  if (nx < 16 || ny < 16) throw RangeError("grid needs at least 16 cells per axis");
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) throw RangeError("half_extent must be positive");
  if (!(waist > 0.0) || !std::isfinite(waist)) throw RangeError("waist must be positive");
}

std::complex<double> lg_value(int ell, double x, double y, double waist) {
  if (std::abs(ell) > kMaxAbsEll) throw RangeError("|ell| exceeds " + std::to_string(kMaxAbsEll));
  const int m = std::abs(ell);
  const double r2 = (x * x + y * y) / (waist * waist);
  if (m > 0 && r2 == 0.0) return {0.0, 0.0};
  // log of sqrt(2/(pi m!)) (sqrt(2) r/w)^m exp(-r^2/w^2)
  const double radial = m > 0 ? 0.5 * m * std::log(2.0 * r2) : 0.0;
  const double log_amp = 0.5 * (std::log(2.0 / kPi) - std::lgamma(m + 1.0)) + radial - r2;
  const double amp = std::exp(log_amp) / waist;
  if (ell == 0) return {amp, 0.0};
  return std::polar(amp, ell * std::atan2(y, x));
}

}  // namespace qsky
