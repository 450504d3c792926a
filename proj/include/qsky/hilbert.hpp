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

#ifndef QSKY_HILBERT_HPP
#define QSKY_HILBERT_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qsky/core.hpp"

namespace qsky {

/// Circular polarization label. |R> maps to S3 = +1 throughout the toolkit.
enum class Pol : int { R = 0, L = 1 };

enum class Arm { A, B };

char to_char(Pol p);

/// Ordered list of distinct OAM charges spanning one photon's spatial space.
class OamBasis {
 public:
  OamBasis() = default;
  explicit OamBasis(std::vector<int> ells);

  std::size_t size() const { return ells_.size(); }
  int operator[](std::size_t i) const { return ells_[i]; }
  const std::vector<int>& ells() const { return ells_; }
  std::optional<std::size_t> index_of(int ell) const;
  bool contains(int ell) const { return index_of(ell).has_value(); }

  bool operator==(const OamBasis&) const = default;

 private:
  std::vector<int> ells_;
};

struct QPlateParams {
  double q = 1.0;
  double tuning = 0.5;

  void validate() const;
  /// OAM imparted at full conversion, 2q, as an integer.
  int oam_shift() const;
};

/// Photon-A analyser |P> = cos(theta/2)|R> + sin(theta/2) e^{i alpha}|L>.
struct ProjectionAngles {
  double theta = 0.0;
  double alpha = 0.0;

  void validate() const;
  Eigen::Vector2cd ket() const;
};

/// Two-photon OAM amplitudes c_{l,-l}, normalised to unit sum of squares.
class SpdcSpectrum {
 public:
  explicit SpdcSpectrum(std::map<int, double> weights);

  static SpdcSpectrum flat(const std::vector<int>& ells);
  /// Spiral spectrum c_l ~ exp(-l^2 / (2 bandwidth^2)) truncated at |l| <= max_ell.
  static SpdcSpectrum gaussian(double bandwidth, int max_ell);

  double weight(int ell) const;
  const std::map<int, double>& weights() const { return weights_; }

 private:
  std::map<int, double> weights_;
};

enum class StateKind { kPureVector, kDensityMatrix };

/// State over NumPol polarization qubits followed by one OAM register.
/// Ordering is first polarization slowest, OAM fastest. NumPol = 2 is the
/// tripartite pol-A x pol-B x OAM-B state; NumPol = 1 is a heralded photon B.
template <int NumPol>
class PolOamState {
 public:
  static_assert(NumPol == 1 || NumPol == 2);
  static constexpr int kPolDim = 1 << NumPol;

  /// Normalises the amplitudes; throws EmptyStateError for a zero vector.
  static PolOamState pure(OamBasis basis, Eigen::VectorXcd amplitudes);
  /// Hermitianises, rescales to unit trace and checks positivity.
  static PolOamState density(OamBasis basis, Eigen::MatrixXcd rho);

  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::kPureVector; }
  const OamBasis& basis() const { return basis_; }
  Eigen::Index dim() const { return kPolDim * static_cast<Eigen::Index>(basis_.size()); }

  const Eigen::VectorXcd& vector() const;
  Eigen::MatrixXcd density_matrix() const;
  PolOamState as_density() const { return density(basis_, density_matrix()); }

  /// Linear index of a basis ket; pols are listed slowest first.
  Eigen::Index index(const std::array<Pol, NumPol>& pols, std::size_t mode) const;

 private:
  PolOamState(StateKind kind, OamBasis basis, Eigen::VectorXcd v, Eigen::MatrixXcd m)
      : kind_(kind), basis_(std::move(basis)), vector_(std::move(v)), matrix_(std::move(m)) {}

  StateKind kind_ = StateKind::kPureVector;
  OamBasis basis_;
  Eigen::VectorXcd vector_;
  Eigen::MatrixXcd matrix_;
};

using TripartiteState = PolOamState<2>;
using HeraldedState = PolOamState<1>;

extern template class PolOamState<1>;
extern template class PolOamState<2>;

/// Amplitude <a, b, ell | psi> of a pure tripartite state (0 if ell is absent).
Complex amplitude(const TripartiteState& state, Pol a, Pol b, int ell);
Complex amplitude(const HeraldedState& state, Pol b, int ell);

/// Same state expressed over another ordering (or superset) of its OAM modes.
TripartiteState reorder_basis(const TripartiteState& state, const OamBasis& basis);

/// Balanced spin-skyrmion state |R>|phi1> + |L>|phi2> with
/// |phi1> = |R,l1> + |L,l2> and |phi2> = |R,l2> + |L,l3>, unit norm.
TripartiteState make_skyrmion_state(int l1, int l2, int l3);

/// Convex mixture of states sharing one OAM basis.
TripartiteState mix(const std::vector<std::pair<double, TripartiteState>>& parts);

// ---------------------------------------------------------------------------
// Spin-orbit mode algebra before the OAM projection on photon A.

struct SpinOrbitMode {
  Pol pol = Pol::R;
  int ell = 0;
  auto operator<=>(const SpinOrbitMode&) const = default;
};

/// Sparse single-photon state over polarization x OAM.
using SpinOrbitState = std::map<SpinOrbitMode, Complex>;

struct PairMode {
  SpinOrbitMode a;
  SpinOrbitMode b;
  auto operator<=>(const PairMode&) const = default;
};

/// Sparse two-photon state over pol-A x OAM-A x pol-B x OAM-B.
using PhotonPairState = std::map<PairMode, Complex>;

/// Weighted list of OAM kets, sum_l c_l |l>.
using OamProjection = std::vector<std::pair<int, Complex>>;

double norm_squared(const SpinOrbitState& state);
double norm_squared(const PhotonPairState& state);

/// q-plate: |R,l> -> sqrt(1-t)|R,l> + sqrt(t)|L,l-2q>,
///          |L,l> -> sqrt(1-t)|L,l> - sqrt(t)|R,l+2q>.
SpinOrbitState apply_qplate(const SpinOrbitState& state, const QPlateParams& params);
PhotonPairState apply_qplate(const PhotonPairState& state, Arm arm, const QPlateParams& params);
/// Acts on pol-B x OAM-B and extends the OAM basis. Arm A is unsupported
/// because the tripartite state has no OAM-A register; mixed input is
/// unsupported as well.
TripartiteState apply_qplate(const TripartiteState& state, Arm arm, const QPlateParams& params);

/// Sum_l c_{l,-l} |R,l>_A |R,-l>_B.
PhotonPairState spdc_pair_state(const SpdcSpectrum& spectrum);

/// <chi|_A on OAM-A, renormalised. The OAM-B basis lists modes in order of
/// first appearance unless `order` is given.
TripartiteState project_oam_A(const PhotonPairState& state, const OamProjection& chi,
                              const std::optional<OamBasis>& order = std::nullopt);

/// Heralded state after identical q-plates on both arms and an OAM
/// projection on photon A. A single-mode projection l' yields the OAM basis
/// {-l', -l'-2q, -l'-4q}. The spectrum defaults to flat weights.
TripartiteState build_spin_skyrmion_state(const OamProjection& ell_a_projection,
                                          const QPlateParams& params,
                                          const std::optional<SpdcSpectrum>& spectrum = std::nullopt);

struct HeraldResult {
  HeraldedState state;
  double probability = 0.0;
};

/// Projects photon A on |P(theta, alpha)> and renormalises photon B.
HeraldResult herald_polarization(const TripartiteState& state, const ProjectionAngles& angles);

/// Coherent OAM filter sum_l c_l |l><l| on photon B, renormalised. The
/// result keeps only the listed modes that are present in the basis.
TripartiteState project_oam_B(const TripartiteState& state, const OamProjection& coeffs);

/// GHZ-like part (|l1> and |l3> kept) and polarization-entangled reference
/// (|l2> kept) of a three-mode skyrmion state.
TripartiteState extract_ghz(const TripartiteState& state);
TripartiteState extract_reference(const TripartiteState& state);

}  // namespace qsky

#endif  // QSKY_HILBERT_HPP
