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

#ifndef QSKY_STOKESFIELD_HPP
#define QSKY_STOKESFIELD_HPP

#include <vector>

#include "qsky/hilbert.hpp"
#include "qsky/modes.hpp"

namespace qsky {

/// Stokes parameters S0..S3 on a grid (rows = y, cols = x), in the R/L
/// basis with |R> at S3 = +1 and H at S1 = +1.
template <typename Scalar>
struct BasicStokesField {
  GridSpec grid;
  RealRaster<Scalar> s0, s1, s2, s3;
};

/// Unit Stokes direction. Masked-out pixels hold the value of their nearest
/// masked-in neighbour so derivative stencils stay smooth.
template <typename Scalar>
struct BasicUnitStokesField {
  GridSpec grid;
  RealRaster<Scalar> s1, s2, s3;
  MaskRaster mask;

  double coverage() const { return mask.count() / static_cast<double>(mask.size()); }
};

using StokesField = BasicStokesField<double>;
using UnitStokesField = BasicUnitStokesField<double>;

/// LG mode rasters for one OAM basis, shared across repeated evaluations
/// (sphere sweeps, dynamics frames).
struct ModeStack {
  GridSpec grid;
  OamBasis basis;
  std::vector<ComplexRaster<double>> modes;
};

ModeStack make_mode_stack(const OamBasis& basis, const GridSpec& grid);

/// Stokes field of a heralded photon-B state; mixed states are summed
/// over their eigen-decomposition.
template <typename Scalar = double>
BasicStokesField<Scalar> stokes_field(const HeraldedState& state, const ModeStack& stack);

/// Heralds photon A on |P(theta, alpha)> and returns photon B's field.
template <typename Scalar = double>
BasicStokesField<Scalar> conditional_stokes(const TripartiteState& state, const ProjectionAngles& angles,
                                            const ModeStack& stack);
template <typename Scalar = double>
BasicStokesField<Scalar> conditional_stokes(const TripartiteState& state, const ProjectionAngles& angles,
                                            const GridSpec& grid);

/// (S0, S1, S2, S3) of a heralded state at one point.
Eigen::Vector4d stokes_at(const HeraldedState& state, double x, double y, double waist);

inline constexpr double kDefaultIntensityFloor = 1e-100;

/// s = (S1, S2, S3)/|(S1, S2, S3)| where S0 >= floor * max(S0) and the
/// polarized part is nonzero. Throws EmptyFieldError if nothing survives.
template <typename Scalar>
BasicUnitStokesField<Scalar> normalize_stokes(const BasicStokesField<Scalar>& field,
                                              double intensity_floor = kDefaultIntensityFloor);

template <typename Scalar>
struct OrientationMap {
  RealRaster<Scalar> psi;  // in (-pi/2, pi/2]
  MaskRaster defined;      // false where S1 = S2 = 0
};

/// psi = atan2(S2, S1) / 2.
template <typename Scalar>
OrientationMap<Scalar> orientation_psi(const BasicStokesField<Scalar>& field);

}  // namespace qsky

#endif  // QSKY_STOKESFIELD_HPP
