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

#ifndef QSKY_TOMOGRAPHY_HPP
#define QSKY_TOMOGRAPHY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsky/hilbert.hpp"

namespace qsky {

/// Eigenvectors of the three Pauli operators, expressed in the R/L basis.
enum class PolSetting { H, V, D, A, R, L };

inline constexpr PolSetting kPolSettings[] = {PolSetting::H, PolSetting::V, PolSetting::D,
                                              PolSetting::A, PolSetting::R, PolSetting::L};

const char* to_string(PolSetting s);
Eigen::Vector2cd pol_ket(PolSetting s);
/// 0 for H/V, 1 for D/A, 2 for R/L.
int pol_basis(PolSetting s);

struct SpatialSetting {
  std::string label;
  Eigen::VectorXcd ket;
  int group = 0;  // settings in one group are mutually orthogonal
};

/// d basis kets, then (|i> + e^{i phi}|j>)/sqrt2 for every pair i < j and
/// phi in {0, pi/2, pi, 3pi/2}.
std::vector<SpatialSetting> spatial_settings(int d_sp);

struct Projector {
  PolSetting pol_a = PolSetting::H;
  PolSetting pol_b = PolSetting::H;
  std::size_t spatial = 0;
  std::size_t group = 0;
  std::string label;
};

/// Rank-1 projectors |v_k><v_k| with v_k = P_a (x) P_b (x) P_s. Order is
/// pol-A slowest, then pol-B, then spatial.
struct ProjectorSet {
  int d_sp = 3;
  std::vector<SpatialSetting> spatial;
  std::vector<Projector> settings;
  Eigen::MatrixXcd kets;                        // one column per setting
  std::vector<std::vector<std::size_t>> groups;  // indices sharing (pol-A basis, pol-B basis, spatial group)
  std::vector<bool> group_complete;             // projectors in the group sum to the identity

  std::size_t size() const { return settings.size(); }
  int dim() const { return 4 * d_sp; }
  Eigen::MatrixXcd projector(std::size_t k) const { return kets.col(static_cast<Eigen::Index>(k)) * kets.col(static_cast<Eigen::Index>(k)).adjoint(); }
};

/// Throws RangeError unless d_sp is 2 or 3.
ProjectorSet build_projector_set(int d_sp);

struct MeasurementRecord {
  std::vector<double> values;  // probabilities or counts
  bool is_counts = false;
  std::int64_t total_per_setting = 0;
  std::uint64_t seed = 0;
};

/// p_k = <v_k| rho |v_k>.
MeasurementRecord forward_model(const TripartiteState& rho, const ProjectorSet& set);
MeasurementRecord forward_model(const Eigen::MatrixXcd& rho, const ProjectorSet& set);

/// counts_k ~ Poisson(total * p_k), reproducible per seed.
MeasurementRecord simulate_counts(const MeasurementRecord& probabilities, std::int64_t total_per_setting,
                                  std::uint64_t seed);

/// Probabilities used by the fit. Counts in complete groups are normalised
/// to unit sum per group; the remaining groups are divided by the mean total
/// of the complete groups.
Eigen::VectorXd estimate_probabilities(const MeasurementRecord& record, const ProjectorSet& set);

struct ReconstructionOptions {
  int max_iterations = 5000;
  double gradient_tolerance = 1e-8;
  int memory = 10;
  double init_noise = 1e-2;
};

struct ReconstructionResult {
  TripartiteState rho_hat;
  double residual = 0.0;  // || p - p_hat ||_2
  double gradient_norm = 0.0;
  double purity = 0.0;
  std::optional<double> fidelity_vs_target;
  int iterations = 0;
  bool converged = false;
};

/// Least-squares fit of rho = L L^dag / Tr(L L^dag), L lower triangular with
/// diagonal exp(x_i) > 0, by L-BFGS. `basis` labels the OAM modes of the result.
ReconstructionResult reconstruct(const MeasurementRecord& record, const ProjectorSet& set, std::uint64_t init_seed,
                                 const OamBasis& basis, const std::optional<TripartiteState>& target = std::nullopt,
                                 const ReconstructionOptions& options = {});

/// The parametrisation, exposed for gradient checks.
namespace cholesky {
Eigen::MatrixXcd lower_factor(const Eigen::VectorXd& params, int dim);
Eigen::MatrixXcd density(const Eigen::VectorXd& params, int dim);
/// Sum of squared residuals and its gradient.
double objective(const Eigen::VectorXd& params, const Eigen::MatrixXcd& kets, const Eigen::VectorXd& p,
                 Eigen::VectorXd* gradient);
inline Eigen::Index num_params(int dim) { return static_cast<Eigen::Index>(dim) * dim; }
}  // namespace cholesky

/// Tr(rho^2).
double purity(const Eigen::MatrixXcd& rho);
double purity(const TripartiteState& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(s) r sqrt(s)))^2, clamped to [0, 1].
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);
double fidelity(const TripartiteState& rho, const TripartiteState& sigma);

}  // namespace qsky

#endif  // QSKY_TOMOGRAPHY_HPP
