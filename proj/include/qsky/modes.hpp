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

#ifndef QSKY_MODES_HPP
#define QSKY_MODES_HPP

#include <cmath>

#include "qsky/core.hpp"

namespace qsky {

/// Uniform cell-centred grid spanning [-half_extent*w, half_extent*w] in x and y.
struct GridSpec {
  int nx = 512;
  int ny = 512;
  double half_extent = 4.0;  // in waists
  double waist = 1.0;

  void validate() const;

  double dx() const { return 2.0 * half_extent * waist / nx; }
  double dy() const { return 2.0 * half_extent * waist / ny; }
  double cell_area() const { return dx() * dy(); }
  double x(int i) const { return (-half_extent + (i + 0.5) * 2.0 * half_extent / nx) * waist; }
  double y(int j) const { return (-half_extent + (j + 0.5) * 2.0 * half_extent / ny) * waist; }

  bool operator==(const GridSpec&) const = default;
};

/// Complex scalar field on a grid, rows = y, cols = x.
template <typename Scalar>
struct ComplexField {
  GridSpec grid;
  ComplexRaster<Scalar> values;
};

inline constexpr int kMaxAbsEll = 64;

/// LG_{p=0, l} at (x, y), continuum normalised.
std::complex<double> lg_value(int ell, double x, double y, double waist);

/// Samples LG_{p=0, l} on the grid. Throws RangeError for |l| > 64.
template <typename Scalar = double>
ComplexField<Scalar> eval_lg(int ell, const GridSpec& grid) {
  grid.validate();
  if (std::abs(ell) > kMaxAbsEll) throw RangeError("|ell| exceeds " + std::to_string(kMaxAbsEll));
  ComplexField<Scalar> field{grid, ComplexRaster<Scalar>(grid.ny, grid.nx)};
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const std::complex<double> v = lg_value(ell, grid.x(i), y, grid.waist);
      field.values(j, i) = std::complex<Scalar>(static_cast<Scalar>(v.real()), static_cast<Scalar>(v.imag()));
    }
  }
  return field;
}

/// Quadrature of |f|^2 over the grid.
template <typename Scalar>
double field_energy(const ComplexField<Scalar>& f) {
  return static_cast<double>(f.values.abs2().sum()) * f.grid.cell_area();
}

}  // namespace qsky

#endif  // QSKY_MODES_HPP
