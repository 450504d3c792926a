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

#include "qsky/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qsky {

char to_char(Pol p) { return p == Pol::R ? 'R' : 'L'; }

OamBasis::OamBasis(std::vector<int> ells) : ells_(std::move(ells)) {
  if (ells_.empty()) throw RangeError("OAM basis must contain at least one mode");
  std::set<int> seen(ells_.begin(), ells_.end());
  if (seen.size() != ells_.size()) throw RangeError("OAM basis entries must be distinct");
}

std::optional<std::size_t> OamBasis::index_of(int ell) const {
  auto it = std::find(ells_.begin(), ells_.end(), ell);
  if (it == ells_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ells_.begin());
}

void QPlateParams::validate() const {
  const double twice = 2.0 * q;
  if (!std::isfinite(q) || std::abs(twice - std::round(twice)) > 1e-12)
    throw RangeError("q-plate charge must be a half-integer");
  if (!(tuning >= 0.0 && tuning <= 1.0)) throw RangeError("q-plate tuning must lie in [0, 1]");
}

int QPlateParams::oam_shift() const {
  validate();
  return static_cast<int>(std::lround(2.0 * q));
}

void ProjectionAngles::validate() const {
  if (!(theta >= 0.0 && theta <= kPi)) throw RangeError("theta must lie in [0, pi]");
  if (!(alpha >= 0.0 && alpha <= kTwoPi)) throw RangeError("alpha must lie in [0, 2pi]");
}

Eigen::Vector2cd ProjectionAngles::ket() const {
  Eigen::Vector2cd p;
  p(0) = std::cos(0.5 * theta);
  p(1) = std::sin(0.5 * theta) * std::polar(1.0, alpha);
  return p;
}

SpdcSpectrum::SpdcSpectrum(std::map<int, double> weights) : weights_(std::move(weights)) {
  double total = 0.0;
  for (const auto& [ell, w] : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw RangeError("SPDC weights must be finite and non-negative");
    total += w * w;
  }
  if (total <= 0.0) throw EmptyStateError("SPDC spectrum has no nonzero weight");
  const double scale = 1.0 / std::sqrt(total);
  for (auto& [ell, w] : weights_) w *= scale;
}

SpdcSpectrum SpdcSpectrum::flat(const std::vector<int>& ells) {
  std::map<int, double> w;
  for (int ell : ells) w[ell] = 1.0;
  return SpdcSpectrum(std::move(w));
}

SpdcSpectrum SpdcSpectrum::gaussian(double bandwidth, int max_ell) {
  if (!(bandwidth > 0.0) || max_ell < 0) throw RangeError("invalid spiral bandwidth");
  std::map<int, double> w;
  for (int ell = -max_ell; ell <= max_ell; ++ell)
    w[ell] = std::exp(-0.5 * ell * ell / (bandwidth * bandwidth));
  return SpdcSpectrum(std::move(w));
}

double SpdcSpectrum::weight(int ell) const {
  auto it = weights_.find(ell);
  return it == weights_.end() ? 0.0 : it->second;
}

// ---------------------------------------------------------------------------

template <int NumPol>
PolOamState<NumPol> PolOamState<NumPol>::pure(OamBasis basis, Eigen::VectorXcd amplitudes) {
  const Eigen::Index d = kPolDim * static_cast<Eigen::Index>(basis.size());
  if (amplitudes.size() != d) throw DimensionMismatchError("amplitude vector does not match basis");
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw EmptyStateError("cannot normalise a zero state");
  amplitudes /= n;
  return PolOamState(StateKind::kPureVector, std::move(basis), std::move(amplitudes), {});
}

template <int NumPol>
PolOamState<NumPol> PolOamState<NumPol>::density(OamBasis basis, Eigen::MatrixXcd rho) {
  const Eigen::Index d = kPolDim * static_cast<Eigen::Index>(basis.size());
  if (rho.rows() != d || rho.cols() != d) throw DimensionMismatchError("density matrix does not match basis");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw UnsupportedInputError("density matrix is not Hermitian");
  Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw EmptyStateError("density matrix has non-positive trace");
  h /= tr;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    throw UnsupportedInputError("density matrix is not positive semidefinite");
  return PolOamState(StateKind::kDensityMatrix, std::move(basis), {}, std::move(h));
}

template <int NumPol>
const Eigen::VectorXcd& PolOamState<NumPol>::vector() const {
  if (!is_pure()) throw UnsupportedInputError("state is not a pure vector");
  return vector_;
}

template <int NumPol>
Eigen::MatrixXcd PolOamState<NumPol>::density_matrix() const {
  if (is_pure()) return vector_ * vector_.adjoint();
  return matrix_;
}

template <int NumPol>
Eigen::Index PolOamState<NumPol>::index(const std::array<Pol, NumPol>& pols, std::size_t mode) const {
  Eigen::Index pol_index = 0;
  for (Pol p : pols) pol_index = 2 * pol_index + static_cast<int>(p);
  return pol_index * static_cast<Eigen::Index>(basis_.size()) + static_cast<Eigen::Index>(mode);
}

template class PolOamState<1>;
template class PolOamState<2>;

Complex amplitude(const TripartiteState& state, Pol a, Pol b, int ell) {
  auto k = state.basis().index_of(ell);
  if (!k) return {0.0, 0.0};
  return state.vector()(state.index({a, b}, *k));
}

Complex amplitude(const HeraldedState& state, Pol b, int ell) {
  auto k = state.basis().index_of(ell);
  if (!k) return {0.0, 0.0};
  return state.vector()(state.index({b}, *k));
}

namespace {

// Maps each index of `from` to its index in `to`; throws if a mode is missing.
Eigen::MatrixXcd embedding(const OamBasis& from, const OamBasis& to) {
  const auto df = static_cast<Eigen::Index>(from.size());
  const auto dt = static_cast<Eigen::Index>(to.size());
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4 * dt, 4 * df);
  for (Eigen::Index k = 0; k < df; ++k) {
    auto j = to.index_of(from[static_cast<std::size_t>(k)]);
    if (!j) throw DimensionMismatchError("target basis lacks mode " + std::to_string(from[static_cast<std::size_t>(k)]));
    for (Eigen::Index p = 0; p < 4; ++p) e(p * dt + static_cast<Eigen::Index>(*j), p * df + k) = 1.0;
  }
  return e;
}

}  // namespace

TripartiteState reorder_basis(const TripartiteState& state, const OamBasis& basis) {
  const Eigen::MatrixXcd e = embedding(state.basis(), basis);
  if (state.is_pure()) return TripartiteState::pure(basis, e * state.vector());
  return TripartiteState::density(basis, e * state.density_matrix() * e.adjoint());
}

TripartiteState make_skyrmion_state(int l1, int l2, int l3) {
  OamBasis basis({l1, l2, l3});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(12);
  auto set = [&](Pol a, Pol b, std::size_t k) { v(2 * 3 * static_cast<int>(a) + 3 * static_cast<int>(b) + static_cast<Eigen::Index>(k)) = 0.5; };
  set(Pol::R, Pol::R, 0);
  set(Pol::R, Pol::L, 1);
  set(Pol::L, Pol::R, 1);
  set(Pol::L, Pol::L, 2);
  return TripartiteState::pure(std::move(basis), std::move(v));
}

TripartiteState mix(const std::vector<std::pair<double, TripartiteState>>& parts) {
  if (parts.empty()) throw EmptyStateError("empty mixture");
  const OamBasis& basis = parts.front().second.basis();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(parts.front().second.dim(), parts.front().second.dim());
  for (const auto& [w, s] : parts) {
    if (!(s.basis() == basis)) throw DimensionMismatchError("mixture components must share a basis");
    if (w < 0.0) throw RangeError("mixture weights must be non-negative");
    rho += w * s.density_matrix();
  }
  return TripartiteState::density(basis, std::move(rho));
}

// ---------------------------------------------------------------------------

double norm_squared(const SpinOrbitState& state) {
  double n = 0.0;
  for (const auto& [m, c] : state) n += std::norm(c);
  return n;
}

double norm_squared(const PhotonPairState& state) {
  double n = 0.0;
  for (const auto& [m, c] : state) n += std::norm(c);
  return n;
}

namespace {

// Image of one spin-orbit ket under the q-plate. The L branch carries a minus
// sign so that each {|R,l>, |L,l-2q>} block is a rotation and the map is unitary.
std::array<std::pair<SpinOrbitMode, double>, 2> qplate_image(const SpinOrbitMode& m, int shift, double tuning) {
  const double keep = std::sqrt(1.0 - tuning);
  const double flip = std::sqrt(tuning);
  if (m.pol == Pol::R) return {{{m, keep}, {SpinOrbitMode{Pol::L, m.ell - shift}, flip}}};
  return {{{m, keep}, {SpinOrbitMode{Pol::R, m.ell + shift}, -flip}}};
}

template <typename Map, typename Key>
void accumulate(Map& out, const Key& key, Complex value) {
  if (value == Complex{}) return;
  out[key] += value;
}

}  // namespace

SpinOrbitState apply_qplate(const SpinOrbitState& state, const QPlateParams& params) {
  const int shift = params.oam_shift();
  SpinOrbitState out;
  for (const auto& [m, c] : state)
    for (const auto& [img, w] : qplate_image(m, shift, params.tuning)) accumulate(out, img, c * w);
  return out;
}

PhotonPairState apply_qplate(const PhotonPairState& state, Arm arm, const QPlateParams& params) {
  const int shift = params.oam_shift();
  PhotonPairState out;
  for (const auto& [m, c] : state) {
    const SpinOrbitMode& target = arm == Arm::A ? m.a : m.b;
    for (const auto& [img, w] : qplate_image(target, shift, params.tuning)) {
      PairMode key = m;
      (arm == Arm::A ? key.a : key.b) = img;
      accumulate(out, key, c * w);
    }
  }
  return out;
}

TripartiteState apply_qplate(const TripartiteState& state, Arm arm, const QPlateParams& params) {
  if (arm == Arm::A) throw UnsupportedInputError("tripartite state carries no OAM on photon A; use PhotonPairState");
  if (!state.is_pure()) throw UnsupportedInputError("q-plate transformation requires a pure state");
  const int shift = params.oam_shift();
  const OamBasis& old_basis = state.basis();
  std::vector<int> ells = old_basis.ells();
  for (int ell : old_basis.ells()) {
    for (int shifted : {ell - shift, ell + shift})
      if (std::find(ells.begin(), ells.end(), shifted) == ells.end()) ells.push_back(shifted);
  }
  OamBasis basis(std::move(ells));
  const std::size_t d_old = old_basis.size();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * static_cast<Eigen::Index>(basis.size()));
  const Eigen::VectorXcd& in = state.vector();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < d_old; ++k) {
        const Complex c = in(state.index({Pol(a), Pol(b)}, k));
        if (c == Complex{}) continue;
        for (const auto& [img, w] : qplate_image(SpinOrbitMode{Pol(b), old_basis[k]}, shift, params.tuning)) {
          const auto j = *basis.index_of(img.ell);
          v((2 * a + static_cast<int>(img.pol)) * static_cast<Eigen::Index>(basis.size()) + static_cast<Eigen::Index>(j)) += c * w;
        }
      }
  return TripartiteState::pure(std::move(basis), std::move(v));
}

PhotonPairState spdc_pair_state(const SpdcSpectrum& spectrum) {
  PhotonPairState out;
  for (const auto& [ell, w] : spectrum.weights())
    if (w != 0.0) out[PairMode{{Pol::R, ell}, {Pol::R, -ell}}] = w;
  return out;
}

TripartiteState project_oam_A(const PhotonPairState& state, const OamProjection& chi,
                              const std::optional<OamBasis>& order) {
  std::map<std::pair<int, int>, std::map<int, Complex>> terms;  // (pa, pb) -> ell_b -> amp
  std::vector<int> seen;
  for (const auto& [m, c] : state) {
    Complex overlap{};
    for (const auto& [ell, coeff] : chi)
      if (ell == m.a.ell) overlap += std::conj(coeff);
    if (overlap == Complex{}) continue;
    terms[{static_cast<int>(m.a.pol), static_cast<int>(m.b.pol)}][m.b.ell] += overlap * c;
    if (std::find(seen.begin(), seen.end(), m.b.ell) == seen.end()) seen.push_back(m.b.ell);
  }
  if (seen.empty()) throw ZeroProbabilityError("OAM projection on photon A has zero overlap");
  OamBasis basis = order ? *order : OamBasis(seen);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * static_cast<Eigen::Index>(basis.size()));
  for (const auto& [pols, amps] : terms)
    for (const auto& [ell, c] : amps) {
      auto k = basis.index_of(ell);
      if (!k) throw DimensionMismatchError("requested basis lacks mode " + std::to_string(ell));
      v((2 * pols.first + pols.second) * static_cast<Eigen::Index>(basis.size()) + static_cast<Eigen::Index>(*k)) += c;
    }
  if (v.squaredNorm() < kMinProbability) throw ZeroProbabilityError("OAM projection on photon A has zero overlap");
  return TripartiteState::pure(std::move(basis), std::move(v));
}

TripartiteState build_spin_skyrmion_state(const OamProjection& ell_a_projection, const QPlateParams& params,
                                          const std::optional<SpdcSpectrum>& spectrum) {
  const int shift = params.oam_shift();
  if (ell_a_projection.empty()) throw EmptyStateError("empty OAM projection on photon A");
  double pnorm = 0.0;
  for (const auto& [ell, c] : ell_a_projection) pnorm += std::norm(c);
  if (std::abs(pnorm - 1.0) > 1e-9) throw RangeError("OAM projection coefficients must be normalised");

  // Photon-A mode l' receives the unconverted R branch from l = l' and the
  // converted L branch from l = l' + 2q.
  std::vector<int> required;
  for (const auto& [ell, c] : ell_a_projection) {
    required.push_back(ell);
    required.push_back(ell + shift);
  }
  const SpdcSpectrum spec = spectrum ? *spectrum : SpdcSpectrum::flat(required);
  for (int ell : required)
    if (spec.weight(ell) == 0.0)
      throw EmptyStateError("projection requires SPDC mode " + std::to_string(ell) + " which has zero weight");

  std::vector<int> ells;
  for (int k = 0; k < 3; ++k)
    for (const auto& [ell, c] : ell_a_projection) {
      const int mode = -ell - k * shift;
      if (std::find(ells.begin(), ells.end(), mode) == ells.end()) ells.push_back(mode);
    }
  OamBasis basis(ells);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const double keep = std::sqrt(1.0 - params.tuning);
  const double flip = std::sqrt(params.tuning);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * d);
  auto add = [&](Pol a, Pol b, int ell, Complex c) {
    v((2 * static_cast<int>(a) + static_cast<int>(b)) * d + static_cast<Eigen::Index>(*basis.index_of(ell))) += c;
  };
  for (const auto& [lp, coeff] : ell_a_projection) {
    const Complex bra = std::conj(coeff);
    // l = l': photon A stays R; photon B carries |R,-l'> -> q-plate.
    const Complex r_branch = bra * keep * spec.weight(lp);
    add(Pol::R, Pol::R, -lp, r_branch * keep);
    add(Pol::R, Pol::L, -lp - shift, r_branch * flip);
    // l = l' + 2q: photon A converted to L; photon B carries |R,-l'-2q>.
    const Complex l_branch = bra * flip * spec.weight(lp + shift);
    add(Pol::L, Pol::R, -lp - shift, l_branch * keep);
    add(Pol::L, Pol::L, -lp - 2 * shift, l_branch * flip);
  }
  if (v.squaredNorm() < kMinProbability) throw EmptyStateError("heralded state vanishes");
  return TripartiteState::pure(std::move(basis), std::move(v));
}

HeraldResult herald_polarization(const TripartiteState& state, const ProjectionAngles& angles) {
  angles.validate();
  const Eigen::Vector2cd p = angles.ket();
  const auto half = 2 * static_cast<Eigen::Index>(state.basis().size());
  if (state.is_pure()) {
    const Eigen::VectorXcd& v = state.vector();
    Eigen::VectorXcd b = std::conj(p(0)) * v.head(half) + std::conj(p(1)) * v.tail(half);
    const double prob = b.squaredNorm();
    if (prob < kMinProbability) throw ZeroProbabilityError("heralding probability vanishes");
    return {HeraldedState::pure(state.basis(), std::move(b)), prob};
  }
  // <P|_A rho |P>_A with M = |P><P| (x) 1 applied on both sides.
  const Eigen::MatrixXcd rho = state.density_matrix();
  Eigen::MatrixXcd cond = Eigen::MatrixXcd::Zero(half, half);
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      cond += std::conj(p(a)) * p(ap) * rho.block(a * half, ap * half, half, half);
  const double prob = cond.trace().real();
  if (prob < kMinProbability) throw ZeroProbabilityError("heralding probability vanishes");
  return {HeraldedState::density(state.basis(), cond), prob};
}

TripartiteState project_oam_B(const TripartiteState& state, const OamProjection& coeffs) {
  const OamBasis& basis = state.basis();
  std::vector<int> kept;
  std::vector<Complex> weight;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Complex c{};
    for (const auto& [ell, w] : coeffs)
      if (ell == basis[k]) c += w;
    if (c != Complex{}) {
      kept.push_back(basis[k]);
      weight.push_back(c);
    }
  }
  if (kept.empty()) throw ZeroProbabilityError("OAM filter has zero overlap with the state");
  OamBasis out_basis(kept);
  const auto d_in = static_cast<Eigen::Index>(basis.size());
  const auto d_out = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd k_op = Eigen::MatrixXcd::Zero(4 * d_out, 4 * d_in);
  for (Eigen::Index j = 0; j < d_out; ++j) {
    const auto src = static_cast<Eigen::Index>(*basis.index_of(kept[static_cast<std::size_t>(j)]));
    for (Eigen::Index p = 0; p < 4; ++p) k_op(p * d_out + j, p * d_in + src) = weight[static_cast<std::size_t>(j)];
  }
  if (state.is_pure()) {
    Eigen::VectorXcd v = k_op * state.vector();
    if (v.squaredNorm() < kMinProbability) throw ZeroProbabilityError("OAM filter has zero overlap with the state");
    return TripartiteState::pure(std::move(out_basis), std::move(v));
  }
  Eigen::MatrixXcd rho = k_op * state.density_matrix() * k_op.adjoint();
  if (rho.trace().real() < kMinProbability) throw ZeroProbabilityError("OAM filter has zero overlap with the state");
  return TripartiteState::density(std::move(out_basis), std::move(rho));
}

TripartiteState extract_ghz(const TripartiteState& state) {
  if (state.basis().size() != 3) throw UnsupportedInputError("GHZ extraction needs a three-mode basis");
  const double h = 1.0 / std::sqrt(2.0);
  return project_oam_B(state, {{state.basis()[0], h}, {state.basis()[2], h}});
}

TripartiteState extract_reference(const TripartiteState& state) {
  if (state.basis().size() != 3) throw UnsupportedInputError("reference extraction needs a three-mode basis");
  return project_oam_B(state, {{state.basis()[1], 1.0}});
}

}  // namespace qsky
