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

#include "qsky/topology.hpp"

#include <algorithm>
#include <cmath>

namespace qsky {

namespace {

// Central differences along columns (x) or rows (y); one-sided at the ends.
template <typename Scalar>
RealRaster<Scalar> derivative(const RealRaster<Scalar>& f, bool along_x, double h) {
  RealRaster<Scalar> d(f.rows(), f.cols());
  const auto inv = static_cast<Scalar>(1.0 / h);
  const auto half_inv = static_cast<Scalar>(0.5 / h);
  if (along_x) {
    const Eigen::Index n = f.cols();
    d.middleCols(1, n - 2) = (f.rightCols(n - 2) - f.leftCols(n - 2)) * half_inv;
    d.col(0) = (f.col(1) - f.col(0)) * inv;
    d.col(n - 1) = (f.col(n - 1) - f.col(n - 2)) * inv;
  } else {
    const Eigen::Index n = f.rows();
    d.middleRows(1, n - 2) = (f.bottomRows(n - 2) - f.topRows(n - 2)) * half_inv;
    d.row(0) = (f.row(1) - f.row(0)) * inv;
    d.row(n - 1) = (f.row(n - 1) - f.row(n - 2)) * inv;
  }
  return d;
}

}  // namespace

template <typename Scalar>
BasicSkyrmionDensityField<Scalar> skyrmion_density(const BasicUnitStokesField<Scalar>& field) {
  if (field.s1.rows() < 3 || field.s1.cols() < 3) throw RangeError("field too small for derivatives");
  const double coverage = field.coverage();
  if (coverage < kMinCoverage)
    throw InsufficientCoverageError("masked-in coverage " + std::to_string(coverage) + " is below 0.95");
  const double hx = field.grid.dx(), hy = field.grid.dy();
  const RealRaster<Scalar> ax = derivative(field.s1, true, hx), ay = derivative(field.s1, false, hy);
  const RealRaster<Scalar> bx = derivative(field.s2, true, hx), by = derivative(field.s2, false, hy);
  const RealRaster<Scalar> cx = derivative(field.s3, true, hx), cy = derivative(field.s3, false, hy);
  const auto inv4pi = static_cast<Scalar>(1.0 / (4.0 * kPi));
  RealRaster<Scalar> sigma = (field.s1 * (bx * cy - cx * by) + field.s2 * (cx * ay - ax * cy) +
                              field.s3 * (ax * by - bx * ay)) * inv4pi;
  return {field.grid, std::move(sigma)};
}

template BasicSkyrmionDensityField<double> skyrmion_density<double>(const BasicUnitStokesField<double>&);
template BasicSkyrmionDensityField<float> skyrmion_density<float>(const BasicUnitStokesField<float>&);

double heralded_skyrmion_number(const HeraldedState& state, const ModeStack& stack) {
  return skyrmion_number(skyrmion_density(normalize_stokes(stokes_field<double>(state, stack))));
}

double heralded_skyrmion_number(const TripartiteState& state, const ProjectionAngles& angles, const ModeStack& stack) {
  return heralded_skyrmion_number(herald_polarization(state, angles).state, stack);
}

SphereMap sphere_sweep(const TripartiteState& state, const std::vector<double>& theta_samples,
                       const std::vector<double>& alpha_samples, const GridSpec& grid) {
  if (theta_samples.empty() || alpha_samples.empty()) throw RangeError("sphere sweep needs theta and alpha samples");
  for (double t : theta_samples) ProjectionAngles{t, 0.0}.validate();
  for (double a : alpha_samples) ProjectionAngles{0.0, a}.validate();
  const ModeStack stack = make_mode_stack(state.basis(), grid);
  const auto nt = static_cast<Eigen::Index>(theta_samples.size());
  const auto na = static_cast<Eigen::Index>(alpha_samples.size());
  SphereMap map{theta_samples, alpha_samples,
                Eigen::MatrixXd::Constant(nt, na, std::numeric_limits<double>::quiet_NaN()),
                MaskRaster::Constant(nt, na, false)};
  for (Eigen::Index i = 0; i < nt; ++i)
    for (Eigen::Index j = 0; j < na; ++j) {
      try {
        const ProjectionAngles angles{theta_samples[static_cast<std::size_t>(i)],
                                      alpha_samples[static_cast<std::size_t>(j)]};
        map.n_values(i, j) = heralded_skyrmion_number(state, angles, stack);
        map.valid(i, j) = true;
      } catch (const ZeroProbabilityError&) {
      }
    }
  return map;
}

std::vector<Plateau> plateaus(const SphereMap& map) {
  std::vector<Plateau> out;
  for (Eigen::Index i = 0; i < map.n_values.rows(); ++i)
    for (Eigen::Index j = 0; j < map.n_values.cols(); ++j) {
      if (!map.valid(i, j)) continue;
      const double n = map.n_values(i, j);
      const int v = static_cast<int>(std::lround(n));
      auto it = std::find_if(out.begin(), out.end(), [v](const Plateau& p) { return p.value == v; });
      if (it == out.end()) {
        out.push_back({v, n, 1});
      } else {
        it->mean += (n - it->mean) / static_cast<double>(++it->samples);
      }
    }
  return out;
}

}  // namespace qsky
