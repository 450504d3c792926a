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

#ifndef QSKY_BELL_HPP
#define QSKY_BELL_HPP

#include <array>
#include <vector>

#include "qsky/hilbert.hpp"
#include "qsky/tomography.hpp"

namespace qsky {

/// Two-qubit sector of the tripartite state: photon B's polarization fixed
/// to `pol_b` and its OAM restricted to {ell_i, ell_j}.
struct BellSubspace {
  Pol pol_b = Pol::R;
  int ell_i = 0;
  int ell_j = 0;
};

/// Post-selected 4x4 density over pol-A (x) {|ell_i>, |ell_j>}, unit trace.
/// Throws ZeroProbabilityError if the sector is empty.
Eigen::Matrix4cd subspace_density(const TripartiteState& state, const BellSubspace& subspace);

/// Spatial analyser |theta_B> = (|ell_i> + e^{-i theta_B}|ell_j>)/sqrt2.
Eigen::Vector2cd analyzer_ket(double theta_b);

inline constexpr PolSetting kBellHeraldSettings[] = {PolSetting::H, PolSetting::V, PolSetting::D, PolSetting::A};

struct BellCurve {
  PolSetting herald = PolSetting::H;
  std::vector<double> rates;  // joint probability per analyser angle
};

struct BellCurveSet {
  BellSubspace subspace;
  std::vector<double> analyzer_angles;
  std::vector<BellCurve> curves;  // H, V, D, A

  const BellCurve& curve(PolSetting s) const;
};

BellCurveSet bell_curves(const Eigen::Matrix4cd& rho, const std::vector<double>& analyzer_angles,
                         const BellSubspace& subspace = {});
BellCurveSet bell_curves(const TripartiteState& state, const BellSubspace& subspace,
                         const std::vector<double>& analyzer_angles);

/// Photon-A measurement basis of a CHSH term.
enum class PolBasis { kSigma1, kSigma2, kSigma3 };

struct ChshSettings {
  PolBasis a = PolBasis::kSigma1;
  PolBasis a_prime = PolBasis::kSigma2;
  double b = 0.25 * kPi;
  double b_prime = 0.75 * kPi;
};

struct ChshResult {
  double s = 0.0;
  ChshSettings settings;
  std::array<double, 4> correlations{};  // E(a,b), E(a,b'), E(a',b), E(a',b')
};

/// Correlation of the photon-A basis with analyser angle theta_B.
double correlation(const Eigen::Matrix4cd& rho, PolBasis a, double theta_b);

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
ChshResult chsh_parameter(const Eigen::Matrix4cd& rho, const ChshSettings& settings = {});
ChshResult chsh_parameter(const TripartiteState& state, const BellSubspace& subspace, const ChshSettings& settings = {});
/// From H/V/D/A fringes: each fringe is fitted exactly by A + B cos + C sin,
/// which holds for any two-qubit state.
ChshResult chsh_parameter(const BellCurveSet& curves, const ChshSettings& settings = {});

}  // namespace qsky

#endif  // QSKY_BELL_HPP
