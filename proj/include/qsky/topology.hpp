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

#ifndef QSKY_TOPOLOGY_HPP
#define QSKY_TOPOLOGY_HPP

#include <limits>
#include <optional>
#include <vector>

#include "qsky/stokesfield.hpp"

namespace qsky {

/// sigma = s . (d_x s x d_y s) / (4 pi), per unit area.
template <typename Scalar>
struct BasicSkyrmionDensityField {
  GridSpec grid;
  RealRaster<Scalar> sigma;
};

using SkyrmionDensityField = BasicSkyrmionDensityField<double>;

inline constexpr double kMinCoverage = 0.95;

/// Central differences, one-sided at the borders. Throws
/// InsufficientCoverageError if fewer than 95% of pixels are masked in.
template <typename Scalar>
BasicSkyrmionDensityField<Scalar> skyrmion_density(const BasicUnitStokesField<Scalar>& field);

/// Riemann sum of sigma over the grid (not rounded).
template <typename Scalar>
double skyrmion_number(const BasicSkyrmionDensityField<Scalar>& density) {
  return static_cast<double>(density.sigma.template cast<double>().sum()) * density.grid.cell_area();
}

/// herald -> Stokes -> normalise -> density -> number.
double heralded_skyrmion_number(const TripartiteState& state, const ProjectionAngles& angles, const ModeStack& stack);
double heralded_skyrmion_number(const HeraldedState& state, const ModeStack& stack);

// ---------------------------------------------------------------------------

struct SphereMap {
  std::vector<double> theta_samples;
  std::vector<double> alpha_samples;
  Eigen::MatrixXd n_values;  // rows = theta, cols = alpha; NaN where invalid
  MaskRaster valid;
};

/// Skyrmion number at every (theta, alpha). Samples whose heralding
/// probability vanishes are flagged invalid rather than thrown.
SphereMap sphere_sweep(const TripartiteState& state, const std::vector<double>& theta_samples,
                       const std::vector<double>& alpha_samples, const GridSpec& grid);

struct Plateau {
  int value = 0;       // nearest integer
  double mean = 0.0;   // mean of the raw numbers rounding to `value`
  std::size_t samples = 0;
};

/// Distinct rounded values in order of first appearance (theta-major).
std::vector<Plateau> plateaus(const SphereMap& map);

// ---------------------------------------------------------------------------

struct QuasiparticleOptions {
  /// Radius about the origin that may hold the central structure; NaN means one waist.
  double central_radius = std::numeric_limits<double>::quiet_NaN();
  /// Minimum alignment with the core polarization for a pixel to seed a basin.
  double seed_alignment = 0.95;
  /// |m_j| needed for a region to count as a quasiparticle.
  double min_charge = 0.5;
};

struct QuasiparticleRegion {
  int label = 0;
  Eigen::Vector2d core{0.0, 0.0};      // most core-aligned pixel of the marker
  Eigen::Vector2d centroid{0.0, 0.0};  // |sigma|-weighted
  double charge = 0.0;
  double area = 0.0;
  bool significant = false;
};

struct QuasiparticleReport {
  int count = 0;
  std::vector<QuasiparticleRegion> regions;  // non-central basins
  std::optional<QuasiparticleRegion> central;
  double central_charge = 0.0;
  double total = 0.0;
  Eigen::ArrayXXi labels;  // basin label per pixel, 0 where unassigned
  Eigen::Vector3d core_direction{0.0, 0.0, 1.0};
};

/// Marker watershed on the alignment of s with the core polarization (the
/// antipode of the border mean). Every basin grows from one core; the basin
/// whose core lies nearest the origin, if within central_radius, is the
/// central structure.
QuasiparticleReport locate_quasiparticles(const UnitStokesField& field, const SkyrmionDensityField& density,
                                          const QuasiparticleOptions& options = {});

// ---------------------------------------------------------------------------

enum class SweepParam { kTheta, kAlpha };

const char* to_string(SweepParam p);

struct QuasiparticleCoord {
  bool present = false;
  double r = 0.0;
  double phi = 0.0;       // centroid azimuth, unwrapped along the track
  double spin = 0.0;      // in-plane texture rotation, unwrapped along the track
  double psi_mean = 0.0;  // |sigma|-weighted mean orientation psi
  double charge = 0.0;
  int winding = 0;
};

struct DynamicsSample {
  double param = 0.0;
  ProjectionAngles angles;
  std::vector<QuasiparticleCoord> tracks;  // one slot per track
  double central_charge = 0.0;
  double total = 0.0;
  bool ambiguous = false;
};

struct DynamicsTrace {
  SweepParam sweep_param = SweepParam::kAlpha;
  std::size_t num_tracks = 0;
  std::vector<DynamicsSample> samples;

  /// Last minus first value of a coordinate along a track (NaN if the track
  /// is not present at both ends).
  double orbit_change(std::size_t track) const;
  double spin_change(std::size_t track) const;
  std::vector<double> radii(std::size_t track) const;
};

/// Runs locate_quasiparticles per sample and links quasiparticles across
/// samples by nearest centroid within half the inter-particle spacing.
DynamicsTrace track_dynamics(const TripartiteState& state, const std::vector<ProjectionAngles>& sweep,
                             const GridSpec& grid, const QuasiparticleOptions& options = {});

}  // namespace qsky

#endif  // QSKY_TOPOLOGY_HPP
